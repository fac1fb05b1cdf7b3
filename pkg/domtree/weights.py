from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Optional, Union

MAX_UNITS = 2**63 - 1


class WeightOverflowError(OverflowError):
    pass


@total_ordering
@dataclass(frozen=True)
class ExtWeight:
    """
    Non-negative exact edge weight, or Infinite.

    Finite weights are integer units of a fixed-point scale declared by the
    instance (a weight of ``units`` stands for ``units / scale``). Infinite is
    encoded as ``units=None`` and compares greater than every finite weight.

    Args:
        units: Integer amount of scale units, or None for Infinite
    """

    units: Optional[int]

    def __post_init__(self):
        if self.units is None:
            return
        if isinstance(self.units, bool) or not isinstance(self.units, int):
            raise TypeError(f"Weight units must be an integer, got {self.units!r}")
        if self.units < 0:
            raise ValueError(f"Weights must be non-negative, got {self.units}")
        if self.units > MAX_UNITS:
            raise WeightOverflowError(f"Weight {self.units} exceeds {MAX_UNITS}")

    @classmethod
    def finite(cls, units: int) -> ExtWeight:
        return cls(units)

    @classmethod
    def infinite(cls) -> ExtWeight:
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.units is not None

    @property
    def is_infinite(self) -> bool:
        return self.units is None

    def __add__(self, other: Union[ExtWeight, int]) -> ExtWeight:
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtWeight(other)
        if not isinstance(other, ExtWeight):
            return NotImplemented
        if self.units is None or other.units is None:
            return INFINITE
        return ExtWeight(self.units + other.units)

    __radd__ = __add__

    def __lt__(self, other: ExtWeight) -> bool:
        if not isinstance(other, ExtWeight):
            return NotImplemented
        if self.units is None:
            return False
        if other.units is None:
            return True
        return self.units < other.units

    def ratio_to(self, other: ExtWeight) -> Optional[Fraction]:
        """Exact ratio self / other, None when undefined (other zero or either infinite)."""
        if self.units is None or other.units is None or other.units == 0:
            return None
        return Fraction(self.units, other.units)

    def to_fraction(self, scale: int = 1) -> Fraction:
        if self.units is None:
            raise ValueError("Infinite weight has no rational value")
        return Fraction(self.units, scale)

    def __str__(self) -> str:
        return "inf" if self.units is None else str(self.units)

    def __repr__(self) -> str:
        return f"ExtWeight({self})"


ZERO = ExtWeight(0)
ONE = ExtWeight(1)
INFINITE = ExtWeight(None)


def total_weight(weights: Iterable[ExtWeight]) -> ExtWeight:
    return sum(weights, ZERO)
