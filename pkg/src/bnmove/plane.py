"""Dimension counts for plane models of curves with a ramified g^2_d."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Tuple

from .calculator import rho_moving
from .errors import BNError, ConfigurationError, NotApplicableError
from .problem import RamificationProblem

MULTIPLE_POINT = "multiple-point"
INFLECTION = "inflection"
FREE_PARAMETER = "free-parameter"


class DegeneratePointError(BNError):
    """The image of Q is a smooth point of the plane curve; nothing to resolve."""


def genus_smooth(d: int) -> int:
    if d < 1:
        raise ValueError("degree must be positive")
    return (d - 1) * (d - 2) // 2


def _check_genus(d: int, g: int) -> None:
    if not 0 <= g <= genus_smooth(d):
        raise ConfigurationError(f"no nodal plane curve of degree {d} and genus {g}")


def node_count(d: int, g: int) -> int:
    _check_genus(d, g)
    return genus_smooth(d) - g


def dim_plane_curves(d: int, g: int) -> int:
    """Dimension of the family of nodal plane curves of degree d and geometric genus g."""
    _check_genus(d, g)
    return 3 * d - 1 + g


def ambient_dimension(d: int) -> int:
    """Dimension of the linear system of all plane curves of degree d."""
    return d * (d + 3) // 2


@dataclass(frozen=True)
class ResolutionStep:
    multiplicity: int
    kind: str
    count: int = 1

    @property
    def loss(self) -> int:
        if self.kind == MULTIPLE_POINT:
            return self.multiplicity * self.count
        if self.kind == INFLECTION:
            return self.count
        return -self.count


@dataclass(frozen=True)
class Resolution:
    steps: Tuple[ResolutionStep, ...]
    gross_loss: int
    net_loss: int
    coprime: bool

    @property
    def net_gain(self) -> bool:
        return self.net_loss < 0

    def genus_drop(self) -> int:
        """Delta invariant of the singular point: sum of m(m-1)/2 over the multiple points."""
        return sum(s.count * s.multiplicity * (s.multiplicity - 1) // 2 for s in self.steps if s.kind == MULTIPLE_POINT)


def resolution_sequence(m0: int, m1: int) -> Resolution:
    """Blow up a branch (t^m0, t^m1) along the Euclidean algorithm and count conditions.

    Each block of q equal multiple points of multiplicity e costs q*e.  If the
    gcd is 1 the last block has multiplicity 1 and ends in q - 1 fixed
    inflection steps.  Otherwise the last multiple point is of type (c, c) and
    is followed by c - 1 inflection steps and one free parameter.  The moving
    image point gives back 2.
    """
    if m1 == 0:
        raise DegeneratePointError("m1 = 0: the image of Q is a smooth point")
    if not m0 > m1 >= 1:
        raise ValueError("need m0 > m1 >= 1")
    steps: List[ResolutionStep] = []
    a, b = m0, m1
    while b:
        q, rem = divmod(a, b)
        if b == 1:
            if q > 1:
                steps.append(ResolutionStep(1, INFLECTION, q - 1))
        else:
            steps.append(ResolutionStep(b, MULTIPLE_POINT, q))
        a, b = b, rem
    c = gcd(m0, m1)
    if c > 1:
        steps.append(ResolutionStep(1, INFLECTION, c - 1))
        steps.append(ResolutionStep(1, FREE_PARAMETER, 1))
    gross = sum(s.loss for s in steps)
    return Resolution(tuple(steps), gross, gross - 2, c == 1)


@dataclass(frozen=True)
class DimensionAudit:
    g: int
    d: int
    m: Tuple[int, int]
    rho: int
    unramified: int
    total: int
    fiber_threshold: int
    moduli: int
    max_family_dimension: int
    nonexistence: bool
    positive_dimensional_ruled_out: bool
    ambient: int


def dimension_audit(p: RamificationProblem) -> DimensionAudit:
    """Compare plane models with a ramification point against 3g-3 moduli of fibres.

    After removing the base point, plane curves with the point have dimension
    3d - 1 + g - (m0 + m1 - 4) = 3g + rho + 5.  A family of g^2_d's of
    dimension f on a general curve would give 3g - 3 + f + 8 of them, so
    f <= rho.
    """
    if p.r != 2:
        raise NotApplicableError("the plane-model count needs r = 2")
    base = p.m[2]
    m0, m1 = p.m[0] - base, p.m[1] - base
    d = p.d - base
    if p.g > genus_smooth(d):
        raise ConfigurationError(f"genus {p.g} exceeds {genus_smooth(d)} for plane curves of degree {d}")
    rho = rho_moving(p)
    unramified = 3 * d - 1 + p.g
    total = unramified - resolution_sequence(m0, m1).net_loss
    moduli = 3 * p.g - 3
    threshold = rho + 8
    f_max = total - moduli - 8
    return DimensionAudit(
        g=p.g,
        d=d,
        m=(m0, m1),
        rho=rho,
        unramified=unramified,
        total=total,
        fiber_threshold=threshold,
        moduli=moduli,
        max_family_dimension=f_max,
        nonexistence=f_max < 0,
        positive_dimensional_ruled_out=f_max <= 0,
        ambient=ambient_dimension(d),
    )
