from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from x5tilt.bounds import (
    CHI,
    Q_FORM,
    chi_bound_e,
    dual_class_e_bound,
    e_to_c3,
    lattice_e_floor,
    our_bound_check,
    our_bound_class,
    our_bound_expression,
    q_bound_e,
    q_bound_raw,
    rank_one_neg_bound,
    schmidt_constant_check,
    torsion_rank0_bound,
    trivial_class_e_bound,
)
from x5tilt.chern import ChernVector, euler_char, from_chern_classes
from x5tilt.numerics import DomainError, QuadNum
from x5tilt.tilt import q_bmt
from x5tilt.walls import q_zero_wall

truncations = st.builds(
    lambda r, c, n: (r, c, F(c * c, 2) - F(n, 5)),
    st.integers(-4, 4),
    st.integers(-5, 5),
    st.integers(-20, 20),
)


def test_lattice_floor_examples():
    assert lattice_e_floor((2, -1, F(-1, 10)), F(41, 150)) == F(7, 30)
    assert lattice_e_floor((3, -2, F(3, 5)), F(-2, 15)) == F(-2, 15)
    assert lattice_e_floor((2, -1, F(1, 10)), F(1, 30)) == F(1, 30)
    with pytest.raises(DomainError):
        lattice_e_floor((1, 0, F(1, 20)), 0)


def test_chi_bound_examples():
    assert chi_bound_e((2, -1, F(1, 10))).e_max == F(1, 30)
    assert chi_bound_e((2, 0, F(-1, 5))).e_max == F(-1, 5)
    assert chi_bound_e((3, -1, F(1, 10))).e_max == F(-1, 6)
    result = chi_bound_e((3, -2, F(3, 5)), assumptions=("vanishing",))
    assert result.e_max == F(-2, 15) and result.route == CHI and result.assumptions == ("vanishing",)


def test_q_bound_examples():
    result = q_bound_e((2, -1, F(-1, 10)), -1)
    assert result.e_max == F(7, 30) and result.route == Q_FORM
    assert q_bound_raw((2, -1, F(-1, 10)), -1) == F(41, 150)
    assert q_bound_e((2, -1, F(1, 10)), -1).e_max >= F(1, 30)
    with pytest.raises(DomainError):
        q_bound_e((2, 0, F(-1, 5)), -1)


def test_q_bound_saturates_the_form():
    v2 = (2, -1, F(-1, 10))
    raw = q_bound_raw(v2, -1)
    assert q_bmt(ChernVector.unchecked(*v2, raw), -1, 0) == 0


def test_trivial_and_dual_bounds():
    assert trivial_class_e_bound(0, 2) == 0
    assert trivial_class_e_bound(-1, 1) == F(-1, 6)
    assert dual_class_e_bound(-1, 1) == F(1, 6)
    assert dual_class_e_bound(0, 3) == 0
    assert dual_class_e_bound(2, 1) == F(-4, 3)
    with pytest.raises(DomainError):
        trivial_class_e_bound(0, 0)


def test_torsion_bound():
    assert torsion_rank0_bound(F(-1, 2)) == F(1, 6)
    assert torsion_rank0_bound(0) == F(1, 24)
    assert torsion_rank0_bound(F(1, 2)) == F(1, 6)


@pytest.mark.parametrize(
    "d, e", [(0, 0), (F(1, 5), 0), (F(2, 5), F(1, 5)), (F(3, 5), F(2, 5)), (F(4, 5), F(3, 5)), (1, 1), (2, 3)]
)
def test_rank_one_bound(d, e):
    assert rank_one_neg_bound(d) == e


def test_rank_one_bound_domain():
    with pytest.raises(DomainError):
        rank_one_neg_bound(F(-1, 5))
    with pytest.raises(DomainError):
        rank_one_neg_bound(F(1, 10))


def test_our_bound_examples():
    for k in (-2, -10, -100):
        report = our_bound_check(k)
        assert report.passes
        assert report.ratio_lower_bound > F(1, 300)
        assert report.actual_exceeds_threshold
    with pytest.raises(DomainError):
        our_bound_check(-1)


def test_our_bound_known_values():
    report = our_bound_check(-2)
    assert report.discriminant == 25 * (1 - 4 * F(-19, 10))
    assert our_bound_class(-2) == ChernVector(2, -1, F(-19, 10), F(115, 30))
    assert float(report.actual_ratio) == pytest.approx(0.00600363477, abs=1e-10)
    # the feet of the wall are zeros of the form on the beta-axis
    center = q_zero_wall(our_bound_class(-2)).center
    for sign in (-1, 1):
        assert q_bmt(our_bound_class(-2), QuadNum(center, sign, report.radius_sq), 0) == 0
    assert float(our_bound_expression(-2)) == pytest.approx(0.014018, abs=1e-5)


def test_schmidt_difference_is_linear():
    diffs = {k: schmidt_constant_check(k).difference for k in range(-5, 3)}
    assert diffs[-2] == F(-19, 5)
    assert diffs[0] == F(1, 5)
    step = diffs[1] - diffs[0]
    assert all(diffs[k + 1] - diffs[k] == step for k in range(-5, 2))


def test_e_to_c3():
    assert e_to_c3(from_chern_classes(2, -1, 2, 0)) == 0
    assert e_to_c3(from_chern_classes(2, 0, 1, -2)) == -2


@given(truncations, st.fractions(min_value=-10, max_value=10, max_denominator=60))
def test_lattice_floor_idempotent_and_feasible(v2, bound):
    e = lattice_e_floor(v2, bound)
    assert e <= bound < e + F(1, 10)
    assert lattice_e_floor(v2, e) == e
    ChernVector(*v2, e)  # passes the lattice check


@given(truncations, st.integers(-5, 5), st.integers(0, 5))
def test_chi_bound_monotone(v2, chi_max, extra):
    low = chi_bound_e(v2, chi_max).e_max
    high = chi_bound_e(v2, chi_max + extra).e_max
    assert low <= high
    assert euler_char(ChernVector(*v2, low)) <= chi_max
