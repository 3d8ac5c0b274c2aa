"""Brill-Noether numbers, closed-form class formulas, existence and dimension bounds."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import List, Optional, Sequence, Tuple

from .errors import NotApplicableError
from .porteous import effective_multiplicities
from .problem import ClassResult, RamificationProblem
from .symbolic import row_excess, symbolic_class


def rho_classical(g: int, r: int, d: int) -> int:
    return g - (r + 1) * (g + r - d)


def ramification_weight(m: Sequence[int]) -> int:
    """Sum of m_i - (r - i) for a sequence listed largest first."""
    r = len(m) - 1
    return sum(x - (r - i) for i, x in enumerate(m))


def rho_moving(p: RamificationProblem) -> int:
    """Expected dimension when the ramification point is allowed to move."""
    return 1 + rho_classical(p.g, p.r, p.d) - ramification_weight(p.m)


def rho_fixed(g: int, r: int, d: int, points: Sequence[Sequence[int]] = ()) -> int:
    """Expected dimension with ramification imposed at fixed general points."""
    for seq in points:
        if len(seq) != r + 1 or any(x <= y for x, y in zip(seq, seq[1:])):
            raise ValueError(f"bad vanishing sequence {tuple(seq)}")
    return rho_classical(g, r, d) - sum(ramification_weight(seq) for seq in points)


def vandermonde(xs: Sequence[int]) -> int:
    """prod_{i<j} (x_i - x_j)."""
    out = 1
    for i, j in combinations(range(len(xs)), 2):
        out *= xs[i] - xs[j]
    return out


def _inv_fact(n: int) -> Fraction:
    return Fraction(1, factorial(n)) if n >= 0 else Fraction(0)


def _resolved_terms(p: RamificationProblem) -> Tuple[int, Tuple[Fraction, Fraction, Fraction]]:
    """X, Y, Z from det(1/(x_i + j)!) = V(x) / prod (x_i + p - 1)!, over the p non-vacuous rows."""
    g, d = p.g, p.d
    q = row_excess(p)
    rows = sum(1 for v in q if v > 0)
    m_eff = effective_multiplicities(p.m)[:rows]
    x = [p.m[i] + g - d for i in range(rows)]
    A = [k * (d + (k - 1) * (g - 1)) for k in m_eff]
    B = list(m_eff)
    C = [k * (k - 1) for k in m_eff]
    top = [xi + rows - 1 for xi in x]
    denom = Fraction(1)
    for t in top:
        denom *= _inv_fact(t)

    def shifted(shift: dict) -> List[int]:
        return [xi - shift.get(i, 0) for i, xi in enumerate(x)]

    X = Fraction(0)
    Y = Fraction(0)
    Z = Fraction(0)
    for k in range(rows):
        X += A[k] * top[k] * vandermonde(shifted({k: 1})) * denom
        Y -= C[k] * top[k] * (top[k] - 1) * vandermonde(shifted({k: 2})) * denom
        for l in range(k + 1, rows):
            Z -= 2 * B[k] * B[l] * top[k] * top[l] * vandermonde(shifted({k: 1, l: 1})) * denom
    return sum(q[:rows]) - 1, (X, Y, Z)


def _printed_terms(p: RamificationProblem) -> Tuple[int, Tuple[Fraction, Fraction, Fraction]]:
    """The bracketed three-part sum read literally.

    Index set m_i - i + g + r - d >= 0, denominators (m_i + g + r - d)!,
    products over i > j of (m_i - m_j), the product over i != k in the third
    part including i = l, and exponent sum(m_i - i + g + d - r).
    """
    g, r, d, m = p.g, p.r, p.d, p.m
    m_eff = effective_multiplicities(m)
    idx = [i for i in range(r + 1) if m[i] - i + g + r - d >= 0]
    y = {i: m[i] + g + r - d for i in idx}
    denom = Fraction(1)
    for i in idx:
        denom *= _inv_fact(y[i])

    def desc_product(excluded: Sequence[int]) -> int:
        out = 1
        rest = [i for i in idx if i not in excluded]
        for i in rest:
            for j in rest:
                if i > j:
                    out *= m[i] - m[j]
        return out

    X = Fraction(0)
    Y = Fraction(0)
    Z = Fraction(0)
    for k in idx:
        pre = m_eff[k] * y[k] * denom
        t1 = (d + (m_eff[k] - 1) * (g - 1)) * desc_product([k])
        for i in idx:
            if i != k:
                t1 *= abs(m[i] - m[k] + 1)
        t2 = (m_eff[k] - 1) * (y[k] - 1) * desc_product([k])
        for i in idx:
            if i < k:
                t2 *= m[i] - m[k] + 2
            elif i > k:
                t2 *= m[k] - m[i] - 2
        t3 = 0
        for l in idx:
            if l == k:
                continue
            term = m_eff[l] * y[l] * abs(m[k] - m[l]) * desc_product([k, l])
            for i in idx:
                if i != k:
                    term *= abs(m[i] - m[k] + 1) * abs(m[i] - m[l] + 1)
            t3 += term
        X += pre * t1
        Y -= pre * t2
        Z -= pre * t3
    c = sum(m[i] - i + g + d - r for i in idx)
    return c, (X, Y, Z)


def wrd_closed_form(p: RamificationProblem, reading: str = "resolved") -> ClassResult:
    """Closed-form coefficient of theta^c for W^r_d(m).

    ``reading="resolved"`` evaluates the Vandermonde expansion with the typos
    fixed (see the README); ``reading="printed"`` evaluates the formula as it
    is usually displayed, for divergence reports.
    """
    if reading == "resolved":
        if not any(v > 0 for v in row_excess(p)):
            return ClassResult(0, Fraction(1), p.g, "closed-form", vacuous=True)
        c, terms = _resolved_terms(p)
    elif reading == "printed":
        if not any(p.m[i] - i + p.g + p.r - p.d >= 0 for i in range(p.r + 1)):
            return ClassResult(0, Fraction(1), p.g, "closed-form-printed", vacuous=True)
        c, terms = _printed_terms(p)
    else:
        raise ValueError(f"unknown reading {reading!r}")
    path = "closed-form" if reading == "resolved" else "closed-form-printed"
    return ClassResult(c, sum(terms, Fraction(0)), p.g, path, terms=terms)


def w1d_closed_form(g: int, d: int, m0: int) -> ClassResult:
    """Class of maps to P^1 with a point of vanishing sequence (m0, 0); needs d <= g + 1."""
    if not 1 <= m0 <= d <= g + 1:
        raise NotApplicableError("formula needs 1 <= m0 <= d <= g + 1")
    rho = 2 * d - g - m0
    a = m0 + g + 1 - d
    coeff = Fraction(m0 * a * (m0 - 1) * (d * m0 - m0 * m0 + g + 1 - d + m0), factorial(a) * factorial(g + 1 - d))
    return ClassResult(g - rho, coeff, g, "closed-form")


@dataclass(frozen=True)
class TermDivergence:
    term: str
    symbolic: Fraction
    closed_form: Fraction


def per_term_divergence(p: RamificationProblem, reading: str = "resolved") -> List[TermDivergence]:
    """The X, Y, Z terms on which the closed form differs from the ring computation."""
    sym = symbolic_class(p)
    closed = wrd_closed_form(p, reading)
    if sym.terms is None or closed.terms is None:
        return []
    out = []
    for name, a, b in zip("XYZ", sym.terms, closed.terms):
        if a != b:
            out.append(TermDivergence(name, a, b))
    if sym.theta_exponent != closed.theta_exponent and not (sym.is_zero and closed.is_zero):
        out.append(TermDivergence("exponent", Fraction(sym.theta_exponent), Fraction(closed.theta_exponent)))
    return out


@dataclass(frozen=True)
class ExistenceReport:
    exists: bool
    symbolic: ClassResult
    closed_form: ClassResult
    agree: bool
    warnings: Tuple[str, ...] = field(default_factory=tuple)


def existence(p: RamificationProblem) -> ExistenceReport:
    """Nonvanishing of the class of W^r_d(m), which forces the locus to be nonempty."""
    sym = symbolic_class(p)
    closed = wrd_closed_form(p)
    agree = sym.same_class(closed)
    warnings = []
    if not agree:
        diffs = ", ".join(f"{t.term}: {t.symbolic} vs {t.closed_form}" for t in per_term_divergence(p))
        warnings.append(f"closed form disagrees with the determinant ({diffs})")
    if sym.vacuous:
        warnings.append("every condition is vacuous; the locus is all of Pic")
    return ExistenceReport(not sym.is_zero, sym, closed, agree, tuple(warnings))


def common_factor_k(m: Sequence[int]) -> int:
    """Largest |S| - 1 over subsets S whose pairwise differences share a factor >= 2; 0 if none."""
    m = list(m)
    for size in range(len(m), 1, -1):
        for subset in combinations(m, size):
            g = 0
            for x in subset[1:]:
                g = gcd(g, subset[0] - x)
            if g >= 2:
                return size - 1
    return 0


@dataclass(frozen=True)
class BoundReport:
    bound: Optional[int]
    nonexistence: bool
    rule: str
    k: int
    rho: int
    convention_sensitive: bool = False


def _bound_for_k(rho: int, r: int, k: int) -> Tuple[int, str]:
    if r == 1:
        return rho, "r=1: dimension is exactly rho"
    if k >= r:
        return min(rho + r - 2, rho + k - 1), "rho + r - 2 (all differences share a factor)"
    return min(rho + k - 1, rho + r - 2), "rho + k - 1"


def dimension_bound(p: RamificationProblem) -> BoundReport:
    """Upper bound on the dimension of the family; ``bound is None`` signals nonexistence."""
    rho = rho_moving(p)
    k = common_factor_k(p.m)
    if rho < 1 - p.r:
        return BoundReport(None, True, "rho < 1 - r", k, rho)
    value, rule = _bound_for_k(rho, p.r, k)
    alt, _ = _bound_for_k(rho, p.r, max(k, 1))
    sensitive = (value < 0) != (alt < 0)
    if value < 0:
        return BoundReport(None, True, rule, k, rho, sensitive)
    return BoundReport(value, False, rule, k, rho, sensitive)
