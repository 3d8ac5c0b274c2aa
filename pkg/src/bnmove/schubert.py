"""Schubert calculus on the Grassmann bundle G(s, E) -> Pic^d(C).

Conventions: S is the rank-s universal subbundle, Q = E/S the rank-q
quotient, and sigma_j = c_j(Q).  A partition indexes sigma_lambda, the Schur
class that is the Jacobi-Trudi determinant in the sigma_j, so parts are at
most q.  Because E is not trivial, classes with more than s rows are not zero
in A(G); products therefore keep them.  They are only discarded by
``lr_product`` when the caller asks for a row bound (plain Grassmannian).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Any, ClassVar, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from .chow import ChowElement, PicClass, chern_F, chern_E, exp_class, gysin_to_pic, inverse
from .errors import ConfigurationError, RingMismatchError
from .porteous import determinant, eliminate_redundant, porteous_determinant
from .problem import RamificationProblem

Partition = Tuple[int, ...]


def partition(parts: Sequence[int]) -> Partition:
    """Validate and normalize: weakly decreasing, trailing zeros stripped."""
    parts = tuple(parts)
    if any(p < 0 for p in parts) or any(x < y for x, y in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def fits(lam: Partition, rows: Optional[int], cols: Optional[int]) -> bool:
    if rows is not None and len(lam) > rows:
        return False
    if cols is not None and lam and lam[0] > cols:
        return False
    return True


def complement(lam: Partition, rows: int, cols: int) -> Partition:
    """The partition dual to lam inside the rows x cols box."""
    padded = list(lam) + [0] * (rows - len(lam))
    return partition([cols - x for x in reversed(padded)])


def horizontal_strips(lam: Partition, k: int, cols: Optional[int] = None) -> Iterator[Partition]:
    """All nu containing lam with nu/lam a horizontal strip of size k."""
    base = list(lam) + [0]

    def extend(i: int, left: int, acc: List[int]) -> Iterator[Partition]:
        if i == len(base):
            if left == 0:
                yield partition(acc)
            return
        upper = base[i - 1] if i > 0 else (cols if cols is not None else base[0] + left)
        if cols is not None:
            upper = min(upper, cols)
        for add in range(min(left, upper - base[i]), -1, -1):
            yield from extend(i + 1, left - add, acc + [base[i] + add])

    if k < 0:
        return
    yield from extend(0, k, [])


def pieri(lam: Partition, k: int, rows: Optional[int] = None, cols: Optional[int] = None) -> Dict[Partition, int]:
    """sigma_lam * sigma_k."""
    return {nu: 1 for nu in horizontal_strips(lam, k, cols) if fits(nu, rows, cols)}


@lru_cache(maxsize=None)
def _lr_growth(lam: Partition, mu: Partition, cols: Optional[int]) -> Tuple[Tuple[Partition, int], ...]:
    """Littlewood-Richardson coefficients c^nu_{lam,mu} by growing lam one letter at a time.

    Letter i is added as a horizontal strip of mu_i boxes on the outer rim;
    the filling is tracked so that each new letter can be checked against the
    lattice condition on the reverse reading word.
    """
    # A filling is a tuple of rows; each row lists the letters placed beyond lam.
    start = tuple(() for _ in range(len(lam) + len(mu)))
    padded = tuple(list(lam) + [0] * len(mu))
    states: Dict[Tuple, int] = {start: 1}
    for letter, size in enumerate(mu, start=1):
        nxt: Dict[Tuple, int] = {}
        for filling, mult in states.items():
            shape = partition([padded[i] + len(row) for i, row in enumerate(filling)])
            for nu in horizontal_strips(shape, size, cols):
                grown = tuple(
                    row + (letter,) * ((nu[i] if i < len(nu) else 0) - padded[i] - len(row))
                    for i, row in enumerate(filling)
                )
                if _lattice_ok(grown, letter):
                    nxt[grown] = nxt.get(grown, 0) + mult
        states = nxt
    out: Dict[Partition, int] = {}
    for filling, mult in states.items():
        nu = partition([padded[i] + len(row) for i, row in enumerate(filling)])
        out[nu] = out.get(nu, 0) + mult
    return tuple(sorted(out.items()))


def _lattice_ok(filling: Tuple[Tuple[int, ...], ...], letter: int) -> bool:
    """Reverse reading word never has more ``letter`` than ``letter - 1`` in a prefix."""
    if letter == 1:
        return True
    balance = 0
    for row in filling:
        for x in reversed(row):
            if x == letter - 1:
                balance += 1
            elif x == letter:
                balance -= 1
                if balance < 0:
                    return False
    return True


def lr_product(
    p: Sequence[int], q: Sequence[int], rows: Optional[int] = None, cols: Optional[int] = None
) -> Dict[Partition, int]:
    """sigma_p * sigma_q as {nu: c^nu_{p,q}}, dropping nu outside the rows x cols box."""
    p, q = partition(p), partition(q)
    if len(q) > len(p) or (len(q) == len(p) and q > p):
        p, q = q, p
    if len(q) <= 1:
        return pieri(p, q[0] if q else 0, rows, cols)
    return {nu: c for nu, c in _lr_growth(p, q, cols) if fits(nu, rows, cols)}


# -- rings over the Grassmann bundle -----------------------------------------


def _truncate(coeff: Any, max_degree: int) -> Any:
    if isinstance(coeff, ChowElement):
        return ChowElement({mono: v for mono, v in coeff.terms.items() if sum(mono) <= max_degree}, coeff.genus)
    return PicClass({a: v for a, v in coeff.coeffs.items() if a <= max_degree}, coeff.genus)


def _coeff_zero(kind: type, genus: int) -> Any:
    return ChowElement.zero(genus) if kind is ChowElement else PicClass({}, genus)


@dataclass(frozen=True)
class _SchubertAlgebra:
    """Finite sums sum_lambda coeff_lambda * sigma_lambda with coefficients from the base."""

    coeffs: Mapping[Partition, Any]
    genus: int
    sub_rank: int
    quot_rank: int
    _key: Tuple = field(init=False, repr=False, compare=False)

    BASE: ClassVar[type] = PicClass
    EXTRA_DIM: ClassVar[int] = 0

    def __post_init__(self) -> None:
        if self.sub_rank < 0 or self.quot_rank < 0:
            raise ConfigurationError("ranks must be nonnegative")
        top = self.top_degree
        canon: Dict[Partition, Any] = {}
        for lam in sorted(self.coeffs):
            nu = partition(lam)
            if nu and nu[0] > self.quot_rank:
                continue
            c = _truncate(self.coeffs[lam], top - sum(nu))
            if c.genus != self.genus:
                raise RingMismatchError("coefficient genus differs from ring genus")
            if nu in canon:
                c = canon[nu] + c
            if not c.is_zero():
                canon[nu] = c
            elif nu in canon:
                del canon[nu]
        object.__setattr__(self, "coeffs", canon)
        object.__setattr__(self, "_key", tuple((k, v) for k, v in canon.items()))

    @property
    def top_degree(self) -> int:
        return self.genus + self.sub_rank * self.quot_rank + self.EXTRA_DIM

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._params() == other._params() and self._key == other._key

    def __hash__(self) -> int:
        return hash((self._params(), self._key))

    def _params(self) -> Tuple[int, int, int]:
        return (self.genus, self.sub_rank, self.quot_rank)

    def _new(self, coeffs: Dict[Partition, Any]):
        return type(self)(coeffs, self.genus, self.sub_rank, self.quot_rank)

    def _check(self, other: "_SchubertAlgebra") -> None:
        if type(other) is not type(self) or other._params() != self._params():
            raise RingMismatchError("Schubert rings with different parameters")

    @classmethod
    def one(cls, genus: int, sub_rank: int, quot_rank: int):
        base = ChowElement.one(genus) if cls.BASE is ChowElement else PicClass.scalar(genus, 1)
        return cls({(): base}, genus, sub_rank, quot_rank)

    @classmethod
    def sigma(cls, lam: Sequence[int], genus: int, sub_rank: int, quot_rank: int):
        base = ChowElement.one(genus) if cls.BASE is ChowElement else PicClass.scalar(genus, 1)
        return cls({partition(lam): base}, genus, sub_rank, quot_rank)

    @classmethod
    def from_base(cls, coeff: Any, sub_rank: int, quot_rank: int):
        return cls({(): coeff}, coeff.genus, sub_rank, quot_rank)

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            out[lam] = out[lam] + c if lam in out else c
        return self._new(out)

    def __neg__(self):
        return self._new({lam: -c for lam, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._new({lam: c * other for lam, c in self.coeffs.items()})
        if isinstance(other, (ChowElement, PicClass)):
            return self._new({lam: c * other for lam, c in self.coeffs.items()})
        self._check(other)
        top = self.top_degree
        out: Dict[Partition, Any] = {}
        for lam, c1 in self.coeffs.items():
            for mu, c2 in other.coeffs.items():
                if sum(lam) + sum(mu) > top:
                    continue
                prod = c1 * c2
                if prod.is_zero():
                    continue
                for nu, mult in lr_product(lam, mu, cols=self.quot_rank).items():
                    if sum(nu) > top:
                        continue
                    term = prod * mult
                    out[nu] = out[nu] + term if nu in out else term
        return self._new(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, lam: Sequence[int]) -> Any:
        return self.coeffs.get(partition(lam), _coeff_zero(self.BASE, self.genus))

    def part(self, degree: int):
        """Homogeneous component of total degree ``degree``."""
        out = {}
        for lam, c in self.coeffs.items():
            rest = degree - sum(lam)
            if rest < 0:
                continue
            if isinstance(c, ChowElement):
                out[lam] = c.part(rest)
            else:
                out[lam] = PicClass({rest: c.coefficient(rest)}, c.genus)
        return self._new(out)


class SchubertPoly(_SchubertAlgebra):
    """Element of A(G(s, E)) with Pic coefficients.

    ``terms`` exposes the flat view {(partition, theta exponent): rational}.
    """

    BASE = PicClass

    @property
    def terms(self) -> Dict[Tuple[Partition, int], Fraction]:
        return {(lam, a): v for lam, c in self.coeffs.items() for a, v in c.coeffs.items()}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{c!r}]*s{list(lam)}" for lam, c in self.coeffs.items())


class SchubertChow(_SchubertAlgebra):
    """Element of A(G(s, E) x C): Schubert classes with ChowElement coefficients."""

    BASE = ChowElement
    EXTRA_DIM = 1

    def gysin(self) -> SchubertPoly:
        """Push forward along the curve factor: take the zeta coefficient everywhere."""
        return SchubertPoly(
            {lam: gysin_to_pic(c) for lam, c in self.coeffs.items()}, self.genus, self.sub_rank, self.quot_rank
        )

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"[{c!r}]*s{list(lam)}" for lam, c in self.coeffs.items())


def _pic_chern_E(genus: int) -> PicClass:
    """c(E) = exp(-theta) on Pic."""
    return PicClass({k: Fraction((-1) ** k, factorial(k)) for k in range(genus + 1)}, genus)


def chern_S(genus: int, sub_rank: int, quot_rank: int) -> SchubertPoly:
    """c(S) = c(pi^* E) * c(Q)^(-1), with c(Q)^(-1) = sum_j (-1)^j sigma_(1^j)."""
    if sub_rank == 0:
        return SchubertPoly.one(genus, sub_rank, quot_rank)
    cE = SchubertPoly.from_base(_pic_chern_E(genus), sub_rank, quot_rank)
    top = genus + sub_rank * quot_rank
    inv_q = {(1,) * j: PicClass.scalar(genus, (-1) ** j) for j in range(top + 1)} if quot_rank else {(): PicClass.scalar(genus, 1)}
    return cE * SchubertPoly(inv_q, genus, sub_rank, quot_rank)


def chern_Q(genus: int, sub_rank: int, quot_rank: int) -> SchubertPoly:
    return SchubertPoly(
        {(j,) if j else (): PicClass.scalar(genus, 1) for j in range(quot_rank + 1)}, genus, sub_rank, quot_rank
    )


def push_to_pic(x: SchubertPoly) -> PicClass:
    """Push forward along G(s, E) -> Pic.

    sigma_nu maps to 0 unless its first s rows equal q; then it maps to
    det(c_{nu_{s+i} + j - i}(E)) over the remaining rows.
    """
    g, s, q = x.genus, x.sub_rank, x.quot_rank
    cE = _pic_chern_E(g)
    total = PicClass({}, g)
    for nu, coeff in x.coeffs.items():
        padded = list(nu) + [0] * max(0, s - len(nu))
        if any(part != q for part in padded[:s]):
            continue
        rest = padded[s:]
        if not rest:
            total = total + coeff
            continue
        n = len(rest)

        def entry(i: int, j: int, rest: List[int] = rest) -> PicClass:
            k = rest[i] + j - i
            return PicClass({k: cE.coefficient(k)}, g) if k >= 0 else PicClass({}, g)

        total = total + coeff * determinant(entry, n, PicClass({}, g))
    return total


# -- the class of the g^r_d's with a ramification point ----------------------


def minimal_twist(problem: RamificationProblem) -> int:
    """Least n making E a bundle of rank >= r + 1 and every condition non-vacuous."""
    g, r, d, m = problem.g, problem.r, problem.d, problem.m
    n = max(0, 2 * g - 1 - d, g + r - d)
    while any(n + m[i] + i - r <= 0 for i in range(r + 1)):
        n += 1
    return n


@dataclass(frozen=True)
class GrassmannSetup:
    problem: RamificationProblem
    n: int
    sub_rank: int
    quot_rank: int


def grassmann_setup(problem: RamificationProblem, n: Optional[int] = None) -> GrassmannSetup:
    n_min = minimal_twist(problem)
    if n is None:
        n = n_min
    elif n < n_min:
        raise ConfigurationError(f"twist n={n} is below the admissible minimum {n_min}")
    rank_e = problem.d + n - problem.g + 1
    s = problem.r + 1
    return GrassmannSetup(problem, n, s, rank_e - s)


def grd_class(problem: RamificationProblem, n: Optional[int] = None) -> SchubertPoly:
    """Class on G(r+1, E) of the (L, V) having a point with vanishing sequence m.

    The filtered Porteous determinant is formed on G x C with entries
    c_{n + m_i - r + j}(F'_i - S) = [exp(theta) c(F'_i) c(Q)]_{n + m_i - r + j}
    and then pushed to G by extracting zeta.
    """
    setup = grassmann_setup(problem, n)
    g, r, d, m = problem.g, problem.r, problem.d, problem.m
    s, q = setup.sub_rank, setup.quot_rank
    n = setup.n
    e_theta = inverse(chern_E(g, d, n))
    c_q = SchubertChow({(j,) if j else (): ChowElement.one(g) for j in range(q + 1)}, g, s, q)
    zero = SchubertChow({}, g, s, q)
    cache: Dict[int, List[SchubertChow]] = {}

    def chern_of(i: int, degree: int) -> SchubertChow:
        if degree < 0:
            return zero
        if i not in cache:
            total = SchubertChow.from_base(e_theta * chern_F(m[i], m[i], g, d), s, q) * c_q
            cache[i] = [total.part(t) for t in range(total.top_degree + 1)]
        parts = cache[i]
        return parts[degree] if degree < len(parts) else zero

    if exceeds_top_degree(problem, n):
        return SchubertPoly({}, g, s, q)
    fdp = eliminate_redundant(m, rank_a=s, b_of=lambda i: n + m[i], r_of=lambda i: r - i, chern_of=chern_of)
    return porteous_determinant(fdp).gysin()


def exceeds_top_degree(problem: RamificationProblem, n: Optional[int] = None) -> bool:
    """True when the determinant's degree already exceeds dim(G x C), forcing the class to vanish."""
    setup = grassmann_setup(problem, n)
    mu_total = sum(setup.n + problem.m[i] + i - problem.r for i in range(problem.r + 1))
    return mu_total > setup.sub_rank * setup.quot_rank + problem.g + 1


def grassmann_pic_class(problem: RamificationProblem, n: Optional[int] = None) -> PicClass:
    """Image in A(Pic) of the Grassmann-bundle class."""
    return push_to_pic(grd_class(problem, n))
