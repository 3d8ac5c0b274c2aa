from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnmove.chow import ChowElement, PicClass
from bnmove.errors import InvalidFlagError, InvalidMultiplicityError, VacuousProblemError
from bnmove.porteous import (
    FilteredDegeneracyProblem,
    check_flag,
    det_sum_expand,
    determinant,
    effective_multiplicities,
    eliminate_redundant,
    multiplicity_runs,
    mu_sequence,
    porteous_determinant,
)


def leibniz(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_determinant_matches_leibniz(rows):
    n = len(rows)
    assert determinant(lambda i, j: Fraction(rows[i][j]), n, Fraction(0)) == leibniz(rows)


@st.composite
def pic_matrix_pair(draw):
    g = draw(st.integers(1, 4))

    def elem():
        return PicClass({draw(st.integers(0, g)): draw(st.integers(-3, 3)) for _ in range(draw(st.integers(0, 3)))}, g)

    A = [[elem() for _ in range(3)] for _ in range(3)]
    B = [[elem() for _ in range(3)] for _ in range(3)]
    return g, A, B


@settings(max_examples=60, deadline=None)
@given(pic_matrix_pair())
def test_det_sum_expand_is_multilinear(data):
    g, A, B = data
    zero = PicClass({}, g)
    parts = det_sum_expand(lambda i, j: A[i][j], lambda i, j: B[i][j], 3, zero)
    assert len(parts) == 8
    total = zero
    for _, x in parts:
        total = total + x
    assert total == determinant(lambda i, j: A[i][j] + B[i][j], 3, zero)
    only_a = dict(parts)[frozenset(range(3))]
    assert only_a == determinant(lambda i, j: A[i][j], 3, zero)


def test_check_flag():
    check_flag([3, 3], [5, 3], [1, 0])
    with pytest.raises(InvalidFlagError):
        check_flag([3, 3], [3, 3], [1, 0])
    with pytest.raises(InvalidFlagError):
        check_flag([3], [2], [-1])
    with pytest.raises(InvalidFlagError):
        check_flag([3, 3], [3, 3], [0, 1])


def test_mu_sequence():
    p = FilteredDegeneracyProblem([4, 4], [5, 3], [2, 1], lambda s, k: Fraction(k == 0))
    mu, sel = mu_sequence(p)
    assert mu == [3, 3, 2]
    assert sel == [0, 0, 1]


@pytest.mark.parametrize("g,r,d", [(2, 1, 2), (3, 1, 3), (4, 1, 3), (5, 2, 6), (6, 2, 6), (4, 2, 5), (6, 3, 7)])
def test_classical_brill_noether_class(g, r, d):
    # W^r_d = prod_{i<=r} i!/(g-d+r+i)! theta^{(r+1)(g-d+r)} from a single-step determinant.
    q = g - d + r
    n = r + 1
    supplier = lambda s, k: PicClass({k: Fraction(1, factorial(k))}, g) if k >= 0 else PicClass({}, g)
    p = FilteredDegeneracyProblem([n + r], [q + r], [r], supplier)
    result = porteous_determinant(p)
    expected = Fraction(1)
    for i in range(r + 1):
        expected *= Fraction(factorial(i), factorial(q + i))
    assert result == PicClass({n * q: expected}, g)


def test_multiplicity_runs_and_effective():
    assert multiplicity_runs((5, 4, 2, 1, 0)) == [(0, 1), (2, 4)]
    assert effective_multiplicities((5, 4, 2, 1, 0)) == (4, 4, 0, 0, 0)
    assert effective_multiplicities((3, 1, 0)) == (3, 0, 0)
    with pytest.raises(InvalidMultiplicityError):
        multiplicity_runs((2, 2, 0))


def test_eliminate_redundant_keeps_run_ends_and_drops_vacuous():
    m = (5, 4, 2, 1, 0)
    fdp = eliminate_redundant(
        m, rank_a=10, b_of=lambda i: 6 + m[i], r_of=lambda i: 9 - i, chern_of=lambda i, k: Fraction(k == 0)
    )
    assert fdp.labels == (1, 4)
    with pytest.raises(VacuousProblemError):
        eliminate_redundant(
            (1, 0), rank_a=5, b_of=lambda i: i, r_of=lambda i: 4, chern_of=lambda i, k: 0, drop_vacuous=True
        )


def test_determinant_over_chow_ring():
    g = 2
    th = ChowElement.theta(g)
    z = ChowElement.zeta(g)
    M = [[th, z], [z, th]]
    assert determinant(lambda i, j: M[i][j], 2, ChowElement.zero(g)) == th * th
