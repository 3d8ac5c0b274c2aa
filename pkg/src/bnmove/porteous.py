"""Filtered Thom-Porteous determinants over an arbitrary commutative ring.

Ring elements only need ``+``, ``-`` and ``*``.  Chern classes are supplied by
a callable ``chern_supplier(step, degree)`` that must return the ring zero for
negative degrees and the ring identity in degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, List, Sequence, Tuple

from .errors import InvalidFlagError, InvalidMultiplicityError, VacuousProblemError

ChernSupplier = Callable[[int, int], Any]


@dataclass(frozen=True)
class FilteredDegeneracyProblem:
    """Rank conditions rank(A_i -> B_i) <= r_i along a flag B_0 ->> B_1 ->> ...

    ``labels`` records which original multiplicity index each flag step came
    from; it is informational only.
    """

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    r: Tuple[int, ...]
    chern_supplier: ChernSupplier
    labels: Tuple[int, ...] = ()
    validate: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "r", tuple(self.r))
        if not (len(self.a) == len(self.b) == len(self.r)) or not self.a:
            raise InvalidFlagError("a, b, r must be nonempty and of equal length")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.a))))
        if self.validate:
            check_flag(self.a, self.b, self.r)

    @property
    def k(self) -> int:
        return len(self.a)

    @property
    def size(self) -> int:
        return self.a[-1] - self.r[-1]

    def zero(self) -> Any:
        return self.chern_supplier(0, -1)


def check_flag(a: Sequence[int], b: Sequence[int], r: Sequence[int]) -> None:
    """Raise InvalidFlagError unless 0 < a_i - r_i increases strictly and b_i - r_i > 0 decreases strictly."""
    if any(x < 0 for x in r):
        raise InvalidFlagError("target ranks must be nonnegative")
    n = [ai - ri for ai, ri in zip(a, r)]
    q = [bi - ri for bi, ri in zip(b, r)]
    if n[0] <= 0 or any(x >= y for x, y in zip(n, n[1:])):
        raise InvalidFlagError(f"a_i - r_i = {n} is not positive and strictly increasing")
    if q[-1] <= 0 or any(x <= y for x, y in zip(q, q[1:])):
        raise InvalidFlagError(f"b_i - r_i = {q} is not positive and strictly decreasing")


def mu_sequence(p: FilteredDegeneracyProblem) -> Tuple[List[int], List[int]]:
    """The partition mu and the selector rho(i) = min{s : i < a_s - r_s} (0-based rows)."""
    mu: List[int] = []
    selector: List[int] = []
    previous = 0
    for s, (ai, bi, ri) in enumerate(zip(p.a, p.b, p.r)):
        n_s = (ai - ri) - previous
        if n_s < 0:
            raise InvalidFlagError("a_i - r_i must be nondecreasing")
        mu.extend([bi - ri] * n_s)
        selector.extend([s] * n_s)
        previous = ai - ri
    return mu, selector


def determinant(entry: Callable[[int, int], Any], n: int, zero: Any) -> Any:
    """Cofactor expansion along rows with memoized minors (no division)."""
    if n == 0:
        raise ValueError("empty determinant needs an explicit identity")
    cache: Dict[Tuple[int, FrozenSet[int]], Any] = {}
    table = [[entry(i, j) for j in range(n)] for i in range(n)]

    def minor(row: int, cols: FrozenSet[int]) -> Any:
        if row == n - 1:
            (j,) = cols
            return table[row][j]
        key = (row, cols)
        if key in cache:
            return cache[key]
        total = zero
        ordered = sorted(cols)
        for pos, j in enumerate(ordered):
            x = table[row][j]
            if _is_zero(x):
                continue
            term = x * minor(row + 1, cols - {j})
            total = total + term if pos % 2 == 0 else total - term
        cache[key] = total
        return total

    return minor(0, frozenset(range(n)))


def _is_zero(x: Any) -> bool:
    probe = getattr(x, "is_zero", None)
    if probe is not None:
        return probe()
    return x == 0


def porteous_matrix(p: FilteredDegeneracyProblem) -> Callable[[int, int], Any]:
    """Entry function (i, j) -> c_{mu_i - i + j}(B_rho(i) - A_rho(i))."""
    mu, selector = mu_sequence(p)

    def entry(i: int, j: int) -> Any:
        return p.chern_supplier(selector[i], mu[i] - i + j)

    return entry


def porteous_determinant(p: FilteredDegeneracyProblem) -> Any:
    """Class of the degeneracy locus as det(c_{mu_i - i + j}(B_rho(i) - A_rho(i)))."""
    mu, _ = mu_sequence(p)
    return determinant(porteous_matrix(p), len(mu), p.zero())


def det_sum_expand(
    A: Callable[[int, int], Any], B: Callable[[int, int], Any], size: int, zero: Any
) -> List[Tuple[FrozenSet[int], Any]]:
    """All 2^size determinants taking rows in S from A and the others from B."""
    out = []
    for k in range(size + 1):
        for S in combinations(range(size), k):
            chosen = frozenset(S)

            def entry(i: int, j: int, chosen: FrozenSet[int] = chosen) -> Any:
                return A(i, j) if i in chosen else B(i, j)

            out.append((chosen, determinant(entry, size, zero)))
    return out


def multiplicity_runs(m: Sequence[int]) -> List[Tuple[int, int]]:
    """Maximal index runs [start, end] along which m drops by exactly 1."""
    check_multiplicities(m)
    runs = []
    start = 0
    for i in range(1, len(m) + 1):
        if i == len(m) or m[i] != m[i - 1] - 1:
            runs.append((start, i - 1))
            start = i
    return runs


def effective_multiplicities(m: Sequence[int]) -> Tuple[int, ...]:
    """Replace every member of a consecutive run by the run's last (smallest) value."""
    out = list(m)
    for start, end in multiplicity_runs(m):
        for i in range(start, end + 1):
            out[i] = m[end]
    return tuple(out)


def check_multiplicities(m: Sequence[int]) -> None:
    if not m or any(x < 0 for x in m) or any(x <= y for x, y in zip(m, m[1:])):
        raise InvalidMultiplicityError(f"{tuple(m)} is not a strictly decreasing nonnegative sequence")


def eliminate_redundant(
    m: Sequence[int],
    *,
    rank_a: int,
    b_of: Callable[[int], int],
    r_of: Callable[[int], int],
    chern_of: Callable[[int, int], Any],
    drop_vacuous: bool = False,
) -> FilteredDegeneracyProblem:
    """Keep one flag step per run of consecutive multiplicities.

    Inside a run the condition at the run's last index implies the others, and
    b_i - r_i is constant along the run, so mu is unchanged.  ``b_of``,
    ``r_of`` and ``chern_of`` are indexed by the original multiplicity index.
    With ``drop_vacuous`` the steps with b_i - r_i <= 0, which impose nothing,
    are removed; they always form a suffix.
    """
    kept = [end for _, end in multiplicity_runs(m)]
    if drop_vacuous:
        kept = [i for i in kept if b_of(i) - r_of(i) > 0]
        if not kept:
            raise VacuousProblemError("every rank condition is vacuous")
    a = tuple(rank_a for _ in kept)
    b = tuple(b_of(i) for i in kept)
    r = tuple(r_of(i) for i in kept)

    def supplier(step: int, degree: int) -> Any:
        return chern_of(kept[step], degree)

    return FilteredDegeneracyProblem(a, b, r, supplier, labels=tuple(kept))
