from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Tuple, Union

from .oracle_config import OracleGuards, default_oracle_guards

SuiteName = Literal[
    "MDT_GST",
    "GST_MDT",
    "DOM_MDS",
    "MDS_SC",
    "HP_MDP",
    "RATIO",
    "GREEDY",
    "HP_EXHAUSTIVE",
]
SUITE_NAMES = (
    "MDT_GST",
    "GST_MDT",
    "DOM_MDS",
    "MDS_SC",
    "HP_MDP",
    "RATIO",
    "GREEDY",
    "HP_EXHAUSTIVE",
)


@dataclass
class GenConfig:
    """
    Configuration of the seeded random instance generator.

    Instance ``i`` of a corpus is drawn from numpy's PCG64 generator seeded with
    ``SeedSequence([seed, i])``, so corpora are reproducible and instances can be
    regenerated independently.

    :param seed: 64-bit seed
    :param n: Largest vertex count (universe size for set cover instances)
    :param n_min: Smallest vertex count; each instance draws its size uniformly from [n_min, n]. Defaults to n
    :param edge_prob: Probability of each edge (membership probability for set cover), as an exact rational
    :param weight_max: Integer weights are drawn uniformly from [1, weight_max]
    :param require_connected: Reject graphs that are not connected
    :param require_min_degree_1: Reject graphs with isolated vertices
    :param group_count: Inclusive bounds on the number of groups of GST instances
    :param group_size: Inclusive bounds on the size of each group
    :param set_count: Inclusive bounds on the number of sets of set cover instances
    :param max_retries: Rejection sampling budget per instance
    """

    seed: int = 0
    n: int = 8
    n_min: Optional[int] = None
    edge_prob: Union[Fraction, str, float] = Fraction(1, 2)
    weight_max: int = 10
    require_connected: bool = False
    require_min_degree_1: bool = False
    group_count: Tuple[int, int] = (1, 3)
    group_size: Tuple[int, int] = (1, 3)
    set_count: Tuple[int, int] = (1, 12)
    max_retries: int = 1000

    def __post_init__(self):
        if self.n_min is None:
            self.n_min = self.n
        if not isinstance(self.edge_prob, Fraction):
            self.edge_prob = Fraction(str(self.edge_prob))
        self.group_count = tuple(self.group_count)
        self.group_size = tuple(self.group_size)
        self.set_count = tuple(self.set_count)
        assert (
            isinstance(self.seed, int) and 0 <= self.seed < 2**64
        ), "seed must be a 64-bit unsigned integer"
        assert (
            isinstance(self.n, int) and self.n >= 1
        ), "n must be a positive integer"
        assert 1 <= self.n_min <= self.n, "n_min must lie in [1, n]"
        assert 0 <= self.edge_prob <= 1, "edge_prob must lie in [0, 1]"
        assert (
            isinstance(self.weight_max, int) and self.weight_max > 0
        ), "weight_max must be a positive integer"
        for name in ("group_count", "group_size", "set_count"):
            low, high = getattr(self, name)
            assert 0 <= low <= high, f"{name} must be an ordered pair of non-negative bounds"
        assert self.max_retries > 0, "max_retries must be greater than 0"

    @property
    def as_dict(self):
        return asdict(self)


def default_gen_config():
    return GenConfig()


@dataclass
class SuiteConfig:
    """
    One suite run: which experiment, how many instances and how they are drawn.

    :param which: Suite name
    :param count: Number of generated instances (largest vertex count for HP_EXHAUSTIVE)
    :param gen_config: Instance generator configuration
    :param guards: Oracle size guards
    :param show_progress: Display a progress bar
    """

    which: SuiteName
    count: int = 100
    gen_config: GenConfig = field(default_factory=default_gen_config)
    guards: OracleGuards = field(default_factory=default_oracle_guards)
    show_progress: bool = False

    def __post_init__(self):
        assert self.which in SUITE_NAMES, f"which must be one of {SUITE_NAMES}"
        assert (
            isinstance(self.count, int) and self.count >= 0
        ), "count must be a non-negative integer"

    @property
    def as_dict(self):
        return asdict(self)
