from fractions import Fraction
from itertools import combinations, product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnmove.calculator import rho_moving
from bnmove.chow import PicClass
from bnmove.errors import ConfigurationError
from bnmove.problem import RamificationProblem
from bnmove.schubert import (
    SchubertPoly,
    chern_Q,
    chern_S,
    complement,
    conjugate,
    grassmann_pic_class,
    grd_class,
    lr_product,
    minimal_twist,
    partition,
    pieri,
    push_to_pic,
)
from bnmove.symbolic import symbolic_class


def skew_lr_count(nu, lam, mu):
    """Brute force: LR tableaux of shape nu/lam and content mu."""
    nu, lam = list(nu), list(lam) + [0] * (len(nu) - len(lam))
    if len(lam) > len(nu) or any(a < b for a, b in zip(nu, lam)):
        return 0
    cells = [(i, j) for i in range(len(nu)) for j in range(lam[i], nu[i])]
    if len(cells) != sum(mu):
        return 0
    letters = range(1, len(mu) + 1)
    count = 0
    for filling in product(letters, repeat=len(cells)):
        if any(filling.count(k) != mu[k - 1] for k in letters):
            continue
        t = dict(zip(cells, filling))
        ok = all(t[(i, j)] <= t[(i, j + 1)] for (i, j) in cells if (i, j + 1) in t)
        ok = ok and all(t[(i, j)] < t[(i + 1, j)] for (i, j) in cells if (i + 1, j) in t)
        if not ok:
            continue
        word = [t[(i, j)] for i in range(len(nu)) for j in reversed(range(lam[i], nu[i]))]
        seen = [0] * (len(mu) + 2)
        for x in word:
            seen[x] += 1
            if x > 1 and seen[x] > seen[x - 1]:
                ok = False
                break
        count += ok
    return count


def partitions_of(n, max_part=None):
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


small = st.integers(0, 4).flatmap(lambda n: st.sampled_from(list(partitions_of(n))))


@settings(max_examples=80, deadline=None)
@given(small, small)
def test_lr_matches_skew_tableaux(lam, mu):
    prod = lr_product(lam, mu)
    total = sum(lam) + sum(mu)
    for nu in partitions_of(total):
        assert prod.get(nu, 0) == skew_lr_count(nu, lam, mu), (lam, mu, nu)


def test_lr_examples():
    assert lr_product((1,), (1,)) == {(2,): 1, (1, 1): 1}
    assert lr_product((2, 1), ()) == {(2, 1): 1}
    assert lr_product((2,), (1, 1), rows=2, cols=2) == {}
    assert lr_product((2,), (2,), rows=2, cols=2) == {(2, 2): 1}
    assert lr_product((1, 1), (1, 1), rows=2, cols=2) == {(2, 2): 1}


def test_pieri_and_conjugate():
    assert pieri((1,), 2) == {(3,): 1, (2, 1): 1}
    assert conjugate((3, 1)) == (2, 1, 1)
    assert complement((2,), 2, 3) == (3, 1)
    with pytest.raises(ValueError):
        partition((1, 2))


@settings(max_examples=40, deadline=None)
@given(small, small)
def test_lr_commutes_and_conjugates(lam, mu):
    assert lr_product(lam, mu) == lr_product(mu, lam)
    conj = {conjugate(nu): c for nu, c in lr_product(lam, mu).items()}
    assert conj == lr_product(conjugate(lam), conjugate(mu))


def test_chern_S_low_degree():
    g, s, q = 2, 2, 2
    cs = chern_S(g, s, q)
    one = PicClass.scalar(g, 1)
    assert cs.part(1) == SchubertPoly({(): PicClass({1: -1}, g), (1,): -one}, g, s, q)
    assert chern_S(g, 0, 3) == SchubertPoly.one(g, 0, 3)


def test_chern_S_theta_free_part_is_geometric_series():
    g, s, q = 1, 3, 1
    cs = chern_S(g, s, q)
    for k in range(0, s * q + 1):
        assert cs.coefficient((1,) * k).coefficient(0) == (-1) ** k


def test_whitney_sum():
    g, s, q = 2, 2, 2
    e = SchubertPoly.from_base(PicClass({k: Fraction((-1) ** k, factorial(k)) for k in range(g + 1)}, g), s, q)
    assert chern_S(g, s, q) * chern_Q(g, s, q) == e


def syt_rectangle(s, q):
    n = s * q
    hooks = 1
    for i in range(s):
        for j in range(q):
            hooks *= (s - i - 1) + (q - j - 1) + 1
    return factorial(n) // hooks


@pytest.mark.parametrize("s,q", [(1, 1), (1, 3), (2, 2), (2, 3), (3, 2)])
def test_pushforward_degree_of_grassmannian(s, q):
    g = 1
    sigma1 = SchubertPoly.sigma((1,), g, s, q)
    power = SchubertPoly.one(g, s, q)
    for _ in range(s * q):
        power = power * sigma1
    assert push_to_pic(power).coefficient(0) == syt_rectangle(s, q)
    assert push_to_pic(SchubertPoly.sigma((q,) * s, g, s, q)) == PicClass.scalar(g, 1)


def instances(max_g=3):
    for g in range(1, max_g + 1):
        for r in (1, 2):
            for d in range(g + r + 1, g + r + 3):
                for m in combinations(range(d, -1, -1), r + 1):
                    p = RamificationProblem(g, r, d, m)
                    if rho_moving(p) >= 0 and not symbolic_class(p).vacuous:
                        yield p


SWEEP = list(instances())


def test_sweep_covers_both_kinds():
    finite = [p for p in SWEEP if rho_moving(p) == p.g - symbolic_class(p).theta_exponent]
    assert len(finite) >= 50
    assert len(SWEEP) - len(finite) >= 50


@pytest.mark.parametrize("p", SWEEP, ids=lambda p: f"{p.g}-{p.r}-{p.d}-{p.m}")
def test_grassmann_pushforward(p):
    # G^r_d(m) has dimension rho; W^r_d(m) has dimension g - c.  The pushforward
    # equals the class of W^r_d(m) when the map is generically finite and is
    # zero when its fibres are positive-dimensional.
    sym = symbolic_class(p)
    pushed = grassmann_pic_class(p)
    if rho_moving(p) == p.g - sym.theta_exponent:
        assert pushed == PicClass({sym.theta_exponent: sym.coefficient}, p.g)
    else:
        assert rho_moving(p) > p.g - sym.theta_exponent
        assert pushed.is_zero()


@pytest.mark.parametrize("case", [(2, 1, 4, (4, 2)), (1, 1, 2, (2, 0)), (2, 1, 4, (3, 0)), (2, 2, 5, (5, 3, 0))])
def test_grassmann_class_is_twist_independent(case):
    p = RamificationProblem(*case)
    n0 = minimal_twist(p)
    values = {grassmann_pic_class(p, n) for n in (n0, n0 + 1, n0 + 2)}
    assert len(values) == 1


def test_grassmann_known_values():
    assert grassmann_pic_class(RamificationProblem(2, 1, 4, (4, 2))) == PicClass({2: 3}, 2)
    assert grassmann_pic_class(RamificationProblem(1, 1, 2, (2, 0))) == PicClass({0: 4}, 1)


def test_grd_class_nonzero_upstairs_with_zero_image():
    p = RamificationProblem(1, 1, 3, (3, 0))
    assert not grd_class(p).is_zero()
    assert grassmann_pic_class(p).is_zero()


def test_below_minimal_twist_is_rejected():
    p = RamificationProblem(2, 1, 4, (4, 2))
    with pytest.raises(ConfigurationError):
        grd_class(p, minimal_twist(p) - 1)


def box_partitions(rows, cols):
    def rec(i, cap):
        if i == rows:
            yield ()
            return
        for x in range(cap, -1, -1):
            for rest in rec(i + 1, x):
                yield (x,) + rest

    return [partition(p) for p in rec(0, cols)]


@pytest.mark.parametrize("rows,cols", [(2, 2), (2, 3), (3, 2)])
def test_duality_pairing(rows, cols):
    box = (cols,) * rows
    for lam in box_partitions(rows, cols):
        for mu in box_partitions(rows, cols):
            if sum(lam) + sum(mu) != rows * cols:
                continue
            expected = {box: 1} if mu == complement(lam, rows, cols) else {}
            assert lr_product(lam, mu, rows, cols) == expected
