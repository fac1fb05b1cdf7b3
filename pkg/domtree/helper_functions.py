from __future__ import annotations

import gzip
import hashlib
import logging
import os
import pickle
from typing import Any, Dict, Optional

import yaml

from .gen_config import GenConfig, SuiteConfig
from .oracle_config import OracleGuards


def get_lower_keys_dict(dictionary: Dict[str, Any]):
    """
    Get dictionary with lower keys

    Args:
        dictionary: Dictionary
    """
    return {key.lower(): value for key, value in dictionary.items()}


def remove_none_values(dictionary: Dict):
    """
    Remove None values from dictionary

    Args:
        dictionary: Dictionary
    """
    new_dict = {}
    for k, v in dictionary.items():
        if isinstance(v, dict):
            v = remove_none_values(v)
        if v is not None:
            new_dict[k] = v
    return new_dict


def load_from_yaml_file(file_path: str):
    with open(file_path, "r") as f:
        config = yaml.safe_load(f)
    return config


def gen_config_from_dict(section: Dict[str, Any]) -> GenConfig:
    params = remove_none_values(get_lower_keys_dict(section))
    if "edge_prob" in params:
        params["edge_prob"] = str(params["edge_prob"])
    for key in ("group_count", "group_size", "set_count"):
        if key in params:
            if not isinstance(params[key], (list, tuple)) or len(params[key]) != 2:
                raise ValueError(f"{key.upper()} must be a pair [low, high]")
            params[key] = tuple(params[key])
    try:
        return GenConfig(**params)
    except TypeError as e:
        raise KeyError(f"Unknown GENERATOR entry: {e}")


def load_suite_config_from_yaml_file(file_path: str) -> SuiteConfig:
    """
    Load a suite run from a yaml file with GENERATOR, ORACLE and SUITE sections

    Args:
        file_path: File path
    """
    config = load_from_yaml_file(file_path) or {}

    if "SUITE" not in config:
        raise KeyError("SUITE section must be present in the configuration")
    elif "GENERATOR" not in config:
        raise KeyError("GENERATOR section must be present in the configuration")

    suite_config = get_lower_keys_dict(config["SUITE"])
    if "which" not in suite_config:
        raise KeyError("WHICH must be present in the SUITE section")
    if not isinstance(suite_config.get("count", 0), int):
        raise ValueError("COUNT in the SUITE section must be an integer")

    try:
        guards = OracleGuards(
            **remove_none_values(get_lower_keys_dict(config.get("ORACLE", None) or {}))
        )
    except TypeError as e:
        raise KeyError(f"Unknown ORACLE entry: {e}")

    return SuiteConfig(
        which=str(suite_config["which"]).upper(),
        count=suite_config.get("count", 100),
        gen_config=gen_config_from_dict(config["GENERATOR"]),
        guards=guards,
        show_progress=bool(suite_config.get("show_progress", False)),
    )


def load_from_pickle(file_path: str):
    """Load data from a pickle or gzip file."""
    try:
        if file_path.endswith(".gz"):
            with gzip.open(file_path, "rb") as file:
                return pickle.load(file)
        with open(file_path, "rb") as file:
            return pickle.load(file)
    except Exception as e:
        logging.warning(f"Failed to open file {file_path}")
        logging.warning(f"Error Message: {e}")
        raise


def save_to_pickle(data, file_path: str) -> None:
    """Save data as a pickle or gzip file; failures are logged and re-raised."""
    directory = os.path.dirname(file_path)
    if directory and not os.path.exists(directory):
        os.makedirs(directory)
    try:
        if file_path.endswith(".gz"):
            with gzip.open(file_path, "wb") as file:
                pickle.dump(data, file)
        else:
            with open(file_path, "wb") as file:
                pickle.dump(data, file)
    except Exception as e:
        logging.warning(f"Failed to save file {file_path}")
        logging.warning(f"Error Message: {e}")
        raise


def text_digest(text: str, length: Optional[int] = 16) -> str:
    """Short sha256 digest identifying an instance by its canonical text."""
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:length]
