"""Problem and result types shared by the calculators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from .errors import InvalidMultiplicityError


@dataclass(frozen=True)
class RamificationProblem:
    """A g^r_d on a general genus-g curve with a point of vanishing sequence m (largest first)."""

    g: int
    r: int
    d: int
    m: Tuple[int, ...]
    n: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        if self.g < 1 or self.r < 1 or self.d < 1:
            raise InvalidMultiplicityError("need g >= 1, r >= 1, d >= 1")
        if len(self.m) != self.r + 1:
            raise InvalidMultiplicityError(f"vanishing sequence must have r + 1 = {self.r + 1} entries")
        if any(x <= y for x, y in zip(self.m, self.m[1:])) or self.m[-1] < 0:
            raise InvalidMultiplicityError(f"{self.m} is not strictly decreasing and nonnegative")
        if self.m[0] > self.d:
            raise InvalidMultiplicityError(f"m_0 = {self.m[0]} exceeds d = {self.d}")

    @classmethod
    def parse(cls, g: int, r: int, d: int, m: Sequence[int] | str, n: Optional[int] = None) -> "RamificationProblem":
        if isinstance(m, str):
            try:
                m = [int(x) for x in m.split(",") if x.strip()]
            except ValueError as exc:
                raise InvalidMultiplicityError(f"cannot parse vanishing sequence {m!r}") from exc
        return cls(g, r, d, tuple(m), n)

    def as_dict(self) -> Dict[str, object]:
        return {"g": self.g, "r": self.r, "d": self.d, "m": list(self.m)}


@dataclass(frozen=True)
class ClassResult:
    """A class K * theta^c on Pic^d, as produced by one computation path.

    ``terms`` holds the three contributions (from the zeta part of the
    canonical bundle, the gamma^2 correction, and the gamma-gamma pairs) when
    the path can separate them.
    """

    theta_exponent: int
    coefficient: Fraction
    genus: int
    path: str
    terms: Optional[Tuple[Fraction, Fraction, Fraction]] = None
    vacuous: bool = False

    @property
    def is_zero(self) -> bool:
        if self.vacuous:
            return False
        return self.coefficient == 0 or self.theta_exponent > self.genus

    @property
    def count(self) -> Optional[int]:
        """Number of points when the class is zero-dimensional; None otherwise."""
        if self.vacuous or self.theta_exponent != self.genus:
            return None
        value = self.coefficient * factorial(self.genus)
        if value.denominator != 1:
            raise ArithmeticError(f"non-integral count {value} from the {self.path} path")
        return int(value)

    def same_class(self, other: "ClassResult") -> bool:
        if self.vacuous or other.vacuous:
            return self.vacuous == other.vacuous
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return (self.theta_exponent, self.coefficient) == (other.theta_exponent, other.coefficient)
