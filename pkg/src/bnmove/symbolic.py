"""Class of W^r_d(m) in A(Pic^d) from the filtered Porteous determinant on Pic x C.

The rank conditions are rank(E -> F_i) <= d + n - g - i, where
E = p_*(L(nP)) has rank d + n - g + 1 and F_i = p_*(L(nP) / L(-m_i Q)) has
rank n + m_i.  Row i of the determinant is c_{m_i + g - d + j}(F'_i - E),
with c(F - E) = exp(theta) c(F) because c(E) = exp(-theta).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Optional, Tuple

from .chow import ChowElement, chern_E, chern_F, gysin_to_pic, inverse
from .errors import ConfigurationError, VacuousProblemError
from .porteous import (
    FilteredDegeneracyProblem,
    determinant,
    eliminate_redundant,
    effective_multiplicities,
    porteous_determinant,
)
from .problem import ClassResult, RamificationProblem


def minimal_pic_twist(problem: RamificationProblem) -> int:
    """Least n with d + n >= 2g - 1 (so E is a bundle) and every target rank nonnegative."""
    g, r, d = problem.g, problem.r, problem.d
    return max(0, 2 * g - 1 - d, g + r - d)


def _twist(problem: RamificationProblem, n: Optional[int]) -> int:
    n_min = minimal_pic_twist(problem)
    if n is None:
        n = problem.n if problem.n is not None else n_min
    if n < n_min:
        raise ConfigurationError(f"twist n={n} is below the admissible minimum {n_min}")
    return n


def row_excess(problem: RamificationProblem) -> List[int]:
    """q_i = b_i - r_i = m_i + i + g - d; rows with q_i <= 0 impose no condition."""
    g, d, m = problem.g, problem.d, problem.m
    return [m[i] + i + g - d for i in range(problem.r + 1)]


def nonvacuous_rows(problem: RamificationProblem) -> int:
    return sum(1 for q in row_excess(problem) if q > 0)


def _chern_difference(problem: RamificationProblem, n: int) -> Callable[[int, int], ChowElement]:
    """(i, degree) -> c_degree(F_i - E), computing c(E) through GRR for this n."""
    g, d, m = problem.g, problem.d, problem.m
    e_inv = inverse(chern_E(g, d, n))
    cache: Dict[int, ChowElement] = {}
    zero = ChowElement.zero(g)

    def chern_of(i: int, degree: int) -> ChowElement:
        if degree < 0:
            return zero
        if i not in cache:
            cache[i] = e_inv * chern_F(m[i], m[i], g, d)
        return cache[i].part(degree)

    return chern_of


def pic_degeneracy_problem(problem: RamificationProblem, n: Optional[int] = None) -> FilteredDegeneracyProblem:
    """The filtered problem after merging consecutive runs and dropping vacuous rows."""
    n = _twist(problem, n)
    g, d, m = problem.g, problem.d, problem.m
    return eliminate_redundant(
        m,
        rank_a=d + n - g + 1,
        b_of=lambda i: n + m[i],
        r_of=lambda i: d + n - g - i,
        chern_of=_chern_difference(problem, n),
        drop_vacuous=True,
    )


def naive_determinant(problem: RamificationProblem, n: Optional[int] = None) -> ChowElement:
    """The determinant with row i built from F_i itself, before any run is merged.

    Only the non-vacuous rows are used.  Equal to the merged determinant by
    row operations, which the tests check.
    """
    n = _twist(problem, n)
    p = nonvacuous_rows(problem)
    if p == 0:
        raise VacuousProblemError("every rank condition is vacuous")
    g, d, m = problem.g, problem.d, problem.m
    chern_of = _chern_difference(problem, n)
    fdp = FilteredDegeneracyProblem(
        a=[d + n - g + 1] * p,
        b=[n + m[i] for i in range(p)],
        r=[d + n - g - i for i in range(p)],
        chern_supplier=chern_of,
        validate=False,
    )
    return porteous_determinant(fdp)


def vacuous_result(problem: RamificationProblem, path: str) -> ClassResult:
    return ClassResult(0, Fraction(1), problem.g, path, vacuous=True)


def _expected_exponent(problem: RamificationProblem) -> int:
    return sum(q for q in row_excess(problem) if q > 0) - 1


def symbolic_class(problem: RamificationProblem, n: Optional[int] = None) -> ClassResult:
    """K theta^c from the determinant on Pic x C pushed to Pic."""
    try:
        fdp = pic_degeneracy_problem(problem, n)
    except VacuousProblemError:
        return vacuous_result(problem, "symbolic")
    pushed = gysin_to_pic(porteous_determinant(fdp))
    c = _expected_exponent(problem)
    extra = [a for a in pushed.coeffs if a != c]
    if extra:
        raise ArithmeticError(f"determinant is not homogeneous: exponents {sorted(pushed.coeffs)} vs {c}")
    return ClassResult(c, pushed.coefficient(c), problem.g, "symbolic", terms=xyz_terms(problem))


def _split_entries(problem: RamificationProblem) -> Tuple[int, Callable[[int, int], Dict[str, ChowElement]]]:
    """Rows 0..p-1 split as M + N - L + G (classical, zeta-from-omega, gamma^2 correction, gamma)."""
    g, d = problem.g, problem.d
    p = nonvacuous_rows(problem)
    m_eff = effective_multiplicities(problem.m)
    x = [problem.m[i] + g - d for i in range(p)]

    def theta_over_fact(power: int, denom: int) -> Fraction:
        return Fraction(1, factorial(denom)) if power >= 0 and denom >= 0 else Fraction(0)

    def entry(i: int, j: int) -> Dict[str, ChowElement]:
        k = m_eff[i]
        t = x[i] + j
        A = k * (d + (k - 1) * (g - 1))
        C = k * (k - 1)
        parts = {
            "M": ChowElement({(t, 0, 0): theta_over_fact(t, t)}, g) if t >= 0 else ChowElement.zero(g),
            "N": ChowElement({(t - 1, 1, 0): A * theta_over_fact(t - 1, t - 1)}, g) if t >= 1 else ChowElement.zero(g),
            "L": ChowElement({(t - 1, 1, 0): C * theta_over_fact(t - 1, t - 2)}, g) if t >= 2 else ChowElement.zero(g),
            "G": ChowElement({(t - 1, 0, 1): k * theta_over_fact(t - 1, t - 1)}, g) if t >= 1 else ChowElement.zero(g),
        }
        return parts

    return p, entry


def xyz_terms(problem: RamificationProblem) -> Optional[Tuple[Fraction, Fraction, Fraction]]:
    """The X, Y, Z contributions to the theta^c coefficient, by direct ring computation.

    X replaces one row by N, Y one row by -L, Z two rows by G; every other
    mixed determinant contains zeta^2, zeta*gamma, or no zeta at all.
    """
    p, entry = _split_entries(problem)
    if p == 0:
        return None
    g = problem.g
    c = _expected_exponent(problem)
    zero = ChowElement.zero(g)
    table = [[entry(i, j) for j in range(p)] for i in range(p)]

    def det_with(replacements: Dict[int, str]) -> Fraction:
        def e(i: int, j: int) -> ChowElement:
            return table[i][j][replacements.get(i, "M")]

        return gysin_to_pic(determinant(e, p, zero)).coefficient(c)

    X = sum((det_with({k: "N"}) for k in range(p)), Fraction(0))
    Y = -sum((det_with({k: "L"}) for k in range(p)), Fraction(0))
    Z = sum((det_with({k: "G", l: "G"}) for k in range(p) for l in range(k + 1, p)), Fraction(0))
    return X, Y, Z
