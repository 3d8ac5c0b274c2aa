from fractions import Fraction
from itertools import combinations

import pytest

from bnmove.calculator import rho_moving
from bnmove.chow import gysin_to_pic
from bnmove.errors import ConfigurationError
from bnmove.porteous import porteous_determinant
from bnmove.problem import RamificationProblem
from bnmove.symbolic import (
    minimal_pic_twist,
    naive_determinant,
    nonvacuous_rows,
    pic_degeneracy_problem,
    row_excess,
    symbolic_class,
    xyz_terms,
)

from .table_data import PRINTED_ERRATA, ROWS


@pytest.mark.parametrize("row", ROWS, ids=lambda r: "-".join(map(str, r[:4])))
def test_table_values(row):
    g, d, s, t, count = row
    p = RamificationProblem(g, 2, d, (t, s, 0))
    assert rho_moving(p) == 0
    assert symbolic_class(p).count == count


@pytest.mark.parametrize("printed,fixed", PRINTED_ERRATA.items())
def test_printed_errata_are_not_rho_zero(printed, fixed):
    g, d, s, t = printed
    assert rho_moving(RamificationProblem(g, 2, d, (t, s, 0))) != 0
    g, d, s, t = fixed
    assert rho_moving(RamificationProblem(g, 2, d, (t, s, 0))) == 0


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_canonical_series_weierstrass_count(g):
    m = (g,) + tuple(range(g - 2, -1, -1))
    p = RamificationProblem(g, g - 1, 2 * g - 2, m)
    assert symbolic_class(p).count == (g - 1) * g * (g + 1)


def sample():
    out = []
    for g in range(1, 5):
        for r in (1, 2):
            for d in range(g, g + 3):
                for m in combinations(range(min(d, g + 2), -1, -1), r + 1):
                    out.append(RamificationProblem(g, r, d, m))
    return out


SAMPLE = sample()


@pytest.mark.parametrize("p", SAMPLE[::3], ids=lambda p: f"{p.g}-{p.r}-{p.d}-{p.m}")
def test_twist_independence(p):
    n0 = minimal_pic_twist(p)
    assert len({symbolic_class(p, n) for n in (n0, n0 + 1, n0 + 3)}) == 1


@pytest.mark.parametrize("p", SAMPLE[::4], ids=lambda p: f"{p.g}-{p.r}-{p.d}-{p.m}")
def test_merged_runs_equal_naive_determinant(p):
    if nonvacuous_rows(p) == 0:
        pytest.skip("vacuous")
    merged = gysin_to_pic(porteous_determinant(pic_degeneracy_problem(p)))
    assert merged == gysin_to_pic(naive_determinant(p))


@pytest.mark.parametrize("p", SAMPLE, ids=lambda p: f"{p.g}-{p.r}-{p.d}-{p.m}")
def test_xyz_terms_sum_to_coefficient(p):
    result = symbolic_class(p)
    if result.vacuous:
        assert xyz_terms(p) is None
        return
    assert sum(result.terms, Fraction(0)) == result.coefficient


def test_known_terms():
    assert symbolic_class(RamificationProblem(2, 2, 4, (4, 2, 0))).terms == (19, 0, -16)


def test_vacuous_conditions():
    p = RamificationProblem(1, 1, 4, (1, 0))
    assert row_excess(p) == [-2, -2]
    res = symbolic_class(p)
    assert res.vacuous and not res.is_zero and res.count is None


def test_twist_below_minimum_rejected():
    p = RamificationProblem(3, 2, 4, (3, 1, 0))
    with pytest.raises(ConfigurationError):
        symbolic_class(p, minimal_pic_twist(p) - 1)


def test_zero_row_and_exponent():
    res = symbolic_class(RamificationProblem(1, 2, 3, (3, 2, 0)))
    assert res.is_zero and res.count == 0 and res.theta_exponent == 1
