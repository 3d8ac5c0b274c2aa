"""Exact Chow ring of Pic^d(C) x C for a general curve C of genus g.

The ring is generated over Q by the theta class, the class zeta of a fibre
{L} x pt pulled back from C, and the mixed class gamma, subject to

    zeta^2 = 0,   zeta*gamma = 0,   gamma^2 = -2*theta*zeta.

Pic x C has dimension g + 1, which fixes the truncation:

    theta^a            vanishes for a >= g + 1,
    zeta * theta^a     vanishes for a >= g + 1   (zeta*theta^g is the top class),
    gamma * theta^a    vanishes for a >= g       (gamma*theta^g has odd type).

Every generator has degree 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import NonNilpotentError, NotAPointClassError, RingMismatchError

Monomial = Tuple[int, int, int]
Scalar = Union[int, Fraction]


def _reduce_monomial(genus: int, a: int, b: int, c: int, coeff: Fraction) -> Iterator[Tuple[Monomial, Fraction]]:
    """Yield the canonical monomial(s) equal to coeff * theta^a zeta^b gamma^c."""
    if b >= 2 or (b >= 1 and c >= 1) or c >= 3:
        return
    if c == 2:
        a, b, c, coeff = a + 1, 1, 0, -2 * coeff
    if b == 0 and c == 0 and a > genus:
        return
    if b == 1 and a > genus:
        return
    if c == 1 and a > genus - 1:
        return
    yield (a, b, c), coeff


@dataclass(frozen=True)
class ChowElement:
    """Sparse exact-rational element of A(Pic^d x C).

    ``terms`` maps ``(a, b, c)`` to the coefficient of theta^a zeta^b gamma^c.
    Construction reduces by the relations and drops zero coefficients, so two
    elements are equal exactly when their term maps agree.
    """

    terms: Mapping[Monomial, Fraction]
    genus: int
    _key: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.genus < 1:
            raise ValueError("genus must be positive")
        reduced: dict = {}
        for (a, b, c), coeff in self.terms.items():
            if a < 0 or b < 0 or c < 0:
                raise ValueError(f"negative exponent in monomial {(a, b, c)}")
            coeff = Fraction(coeff)
            if coeff == 0:
                continue
            for mono, val in _reduce_monomial(self.genus, a, b, c, coeff):
                reduced[mono] = reduced.get(mono, Fraction(0)) + val
        canon = {k: reduced[k] for k in sorted(reduced) if reduced[k] != 0}
        object.__setattr__(self, "terms", canon)
        object.__setattr__(self, "_key", tuple(canon.items()))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ChowElement.scalar(self.genus, other)
        if not isinstance(other, ChowElement):
            return NotImplemented
        return self.genus == other.genus and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.genus, self._key))

    # -- constructors -------------------------------------------------

    @classmethod
    def scalar(cls, genus: int, value: Scalar) -> "ChowElement":
        return cls({(0, 0, 0): Fraction(value)}, genus)

    @classmethod
    def zero(cls, genus: int) -> "ChowElement":
        return cls({}, genus)

    @classmethod
    def one(cls, genus: int) -> "ChowElement":
        return cls.scalar(genus, 1)

    @classmethod
    def theta(cls, genus: int, power: int = 1) -> "ChowElement":
        return cls({(power, 0, 0): Fraction(1)}, genus)

    @classmethod
    def zeta(cls, genus: int) -> "ChowElement":
        return cls({(0, 1, 0): Fraction(1)}, genus)

    @classmethod
    def gamma(cls, genus: int) -> "ChowElement":
        return cls({(0, 0, 1): Fraction(1)}, genus)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other: object) -> "ChowElement":
        if isinstance(other, ChowElement):
            if other.genus != self.genus:
                raise RingMismatchError(f"genus {self.genus} vs {other.genus}")
            return other
        if isinstance(other, (int, Fraction)):
            return ChowElement.scalar(self.genus, other)
        raise TypeError(f"cannot combine ChowElement with {type(other).__name__}")

    def __add__(self, other: object) -> "ChowElement":
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in y.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return ChowElement(out, self.genus)

    __radd__ = __add__

    def __neg__(self) -> "ChowElement":
        return ChowElement({k: -v for k, v in self.terms.items()}, self.genus)

    def __sub__(self, other: object) -> "ChowElement":
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-y)

    def __rsub__(self, other: object) -> "ChowElement":
        return (-self) + other

    def __mul__(self, other: object) -> "ChowElement":
        if isinstance(other, (int, Fraction)):
            return ChowElement({k: v * other for k, v in self.terms.items()}, self.genus)
        try:
            y = self._coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for (a1, b1, c1), v1 in self.terms.items():
            for (a2, b2, c2), v2 in y.terms.items():
                for mono, val in _reduce_monomial(self.genus, a1 + a2, b1 + b2, c1 + c2, v1 * v2):
                    out[mono] = out.get(mono, Fraction(0)) + val
        return ChowElement(out, self.genus)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "ChowElement":
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, k: int) -> "ChowElement":
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = ChowElement.one(self.genus)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction:
        return self.terms.get((0, 0, 0), Fraction(0))

    def part(self, degree: int) -> "ChowElement":
        """Homogeneous component of the given degree."""
        return ChowElement({m: v for m, v in self.terms.items() if sum(m) == degree}, self.genus)

    def max_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, a: int, b: int = 0, c: int = 0) -> Fraction:
        return self.terms.get((a, b, c), Fraction(0))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (a, b, c), v in self.terms.items():
            gens = ([f"th^{a}" if a > 1 else "th"] if a else []) + ["ze"] * b + ["ga"] * c
            pieces.append(f"({v})" + "".join("*" + x for x in gens))
        return " + ".join(pieces)


def mul(x: ChowElement, y: ChowElement) -> ChowElement:
    """Product in the truncated ring; raises RingMismatchError on genus mismatch."""
    return x * y


def _series(x: ChowElement, coefficients: Iterable[Fraction]) -> ChowElement:
    """Sum of coefficients[k] * x^k, valid when x is nilpotent."""
    if x.constant() != 0:
        raise NonNilpotentError("element has a nonzero degree-0 term")
    total = ChowElement.zero(x.genus)
    power = ChowElement.one(x.genus)
    for coeff in coefficients:
        if power.is_zero():
            break
        total = total + power * coeff
        power = power * x
    return total


def _exp_coefficients() -> Iterator[Fraction]:
    k = 0
    while True:
        yield Fraction(1, factorial(k))
        k += 1


def exp_class(c1: ChowElement) -> ChowElement:
    """Exponential series of a nilpotent element."""
    return _series(c1, _exp_coefficients())


def log_class(x: ChowElement) -> ChowElement:
    """Logarithm of an element with constant term 1."""
    if x.constant() != 1:
        raise NonNilpotentError("logarithm needs constant term 1")

    def coeffs() -> Iterator[Fraction]:
        yield Fraction(0)
        k = 1
        while True:
            yield Fraction((-1) ** (k + 1), k)
            k += 1

    return _series(x - 1, coeffs())


def inverse(x: ChowElement) -> ChowElement:
    """Multiplicative inverse of an element with nonzero constant term."""
    c0 = x.constant()
    if c0 == 0:
        raise NonNilpotentError("element with zero constant term is not invertible")
    u = x / c0 - 1

    def coeffs() -> Iterator[Fraction]:
        k = 0
        while True:
            yield Fraction((-1) ** k)
            k += 1

    return _series(u, coeffs()) / c0


@dataclass(frozen=True)
class PicClass:
    """Exact element of A(Pic^d): ``coeffs`` maps a to the coefficient of theta^a."""

    coeffs: Mapping[int, Fraction]
    genus: int
    _key: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        canon = {}
        for a in sorted(self.coeffs):
            v = Fraction(self.coeffs[a])
            if a < 0:
                raise ValueError("negative theta exponent")
            if v != 0 and a <= self.genus:
                canon[a] = v
        object.__setattr__(self, "coeffs", canon)
        object.__setattr__(self, "_key", tuple(canon.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PicClass):
            return NotImplemented
        return self.genus == other.genus and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.genus, self._key))

    @classmethod
    def theta(cls, genus: int, power: int = 1) -> "PicClass":
        return cls({power: Fraction(1)}, genus)

    @classmethod
    def scalar(cls, genus: int, value: Scalar) -> "PicClass":
        return cls({0: Fraction(value)}, genus)

    def _coerce(self, other: object) -> "PicClass":
        if isinstance(other, PicClass):
            if other.genus != self.genus:
                raise RingMismatchError(f"genus {self.genus} vs {other.genus}")
            return other
        if isinstance(other, (int, Fraction)):
            return PicClass.scalar(self.genus, other)
        raise TypeError(f"cannot combine PicClass with {type(other).__name__}")

    def __add__(self, other: object) -> "PicClass":
        y = self._coerce(other)
        out = dict(self.coeffs)
        for a, v in y.coeffs.items():
            out[a] = out.get(a, Fraction(0)) + v
        return PicClass(out, self.genus)

    __radd__ = __add__

    def __neg__(self) -> "PicClass":
        return PicClass({a: -v for a, v in self.coeffs.items()}, self.genus)

    def __sub__(self, other: object) -> "PicClass":
        return self + (-self._coerce(other))

    def __mul__(self, other: object) -> "PicClass":
        if isinstance(other, (int, Fraction)):
            return PicClass({a: v * other for a, v in self.coeffs.items()}, self.genus)
        y = self._coerce(other)
        out: dict = {}
        for a1, v1 in self.coeffs.items():
            for a2, v2 in y.coeffs.items():
                out[a1 + a2] = out.get(a1 + a2, Fraction(0)) + v1 * v2
        return PicClass(out, self.genus)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, a: int) -> Fraction:
        return self.coeffs.get(a, Fraction(0))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({v})*th^{a}" for a, v in self.coeffs.items())


def gysin_to_pic(x: ChowElement) -> PicClass:
    """Push forward along Pic x C -> Pic: keep the coefficient of zeta*theta^a."""
    return PicClass({a: v for (a, b, c), v in x.terms.items() if b == 1}, x.genus)


def pullback(x: PicClass) -> ChowElement:
    """Pull a class on Pic back to Pic x C."""
    return ChowElement({(a, 0, 0): v for a, v in x.coeffs.items()}, x.genus)


def evaluate_degree(x: PicClass) -> Fraction:
    """Degree of a zero-dimensional class, using theta^g = g! [point]."""
    g = x.genus
    if any(a != g for a in x.coeffs):
        raise NotAPointClassError(f"class {x!r} has support below theta^{g}")
    return x.coefficient(g) * factorial(g)


def chern_F(m: int, m_eff: int, g: int, d: int) -> ChowElement:
    """Total Chern class of F = p_*(L_univ / L_univ(-m Q_diag)).

    ``m_eff`` is the multiplicity whose bundle actually enters the determinant
    after redundant conditions have been merged; ``m`` is only validated.
    """
    if not 0 <= m_eff <= m:
        raise ValueError("need 0 <= m_eff <= m")
    k = m_eff
    return ChowElement(
        {
            (0, 0, 0): Fraction(1),
            (0, 1, 0): Fraction(k * (d + (k - 1) * (g - 1))),
            (0, 0, 1): Fraction(k),
            (1, 1, 0): Fraction(-k * (k - 1)),
        },
        g,
    )


def chern_F_product(m: int, g: int, d: int) -> ChowElement:
    """The same class as a product over the filtration quotients L(-kQ)/L(-(k+1)Q)."""
    total = ChowElement.one(g)
    for k in range(m):
        total = total * ChowElement({(0, 0, 0): 1, (0, 1, 0): d + 2 * k * (g - 1), (0, 0, 1): 1}, g)
    return total


def chern_from_character(ch: ChowElement) -> ChowElement:
    """Total Chern class from a Chern character via log c = sum (-1)^(k-1) (k-1)! ch_k."""
    g = ch.genus
    log_c = ChowElement.zero(g)
    for k in range(1, ch.max_degree() + 1):
        log_c = log_c + ch.part(k) * ((-1) ** (k - 1) * factorial(k - 1))
    return exp_class(log_c)


def todd_curve(g: int) -> ChowElement:
    """Todd class of C pulled back to Pic x C: 1 + (1 - g) zeta."""
    return ChowElement({(0, 0, 0): 1, (0, 1, 0): 1 - g}, g)


def chern_character_E(g: int, d: int, n: int) -> PicClass:
    """ch of E = p_*(L_univ(nP)) by Grothendieck-Riemann-Roch."""
    c1 = ChowElement({(0, 1, 0): d + n, (0, 0, 1): 1}, g)
    return gysin_to_pic(todd_curve(g) * exp_class(c1))


def chern_E(g: int, d: int, n: int) -> ChowElement:
    """Total Chern class of E on Pic, pulled back to Pic x C; equals exp(-theta)."""
    ch = pullback(chern_character_E(g, d, n))
    return chern_from_character(ch)
