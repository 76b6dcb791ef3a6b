import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from x5tilt.chern import (
    ChernVec2,
    ChernVector,
    discriminant,
    dual_shift,
    euler_char,
    from_chern_classes,
    heart_decomposition,
    slope,
    standard_object,
    to_chern_classes,
    twist,
    twisted_ch,
)
from x5tilt.numerics import DomainError

lattice_vectors = st.builds(
    from_chern_classes,
    st.integers(-6, 6),
    st.integers(-6, 6),
    st.integers(-30, 30),
    st.integers(-30, 30),
)


def test_from_chern_classes_examples():
    assert from_chern_classes(2, -1, 2, 0) == ChernVector(2, -1, F(1, 10), F(1, 30))
    assert from_chern_classes(1, 0, 0, 0) == ChernVector(1, 0, 0, 0)
    assert from_chern_classes(2, 0, 2, 0) == ChernVector(2, 0, F(-2, 5), 0)


def test_lattice_violation_rejected():
    with pytest.raises(DomainError):
        ChernVector(2, -1, F(1, 10), F(1, 31))
    with pytest.raises(DomainError):
        ChernVec2(1, 0, F(1, 20))
    # the unchecked constructor accepts it
    assert ChernVector.unchecked(2, -1, F(1, 10), F(1, 31)).e == F(1, 31)


def test_twist_examples():
    assert twist(ChernVector(1, 0, 0, 0), -1) == ChernVector(1, -1, F(1, 2), F(-1, 6))
    assert twist(ChernVector(2, -1, F(-1, 10), F(7, 30)), 1) == ChernVector(2, 1, F(-1, 10), F(-1, 30))
    e = F(-2, 15) + F(1, 10)
    assert twist(ChernVector(3, 1, F(1, 10), e), -1) == ChernVector(3, -2, F(3, 5), e - F(1, 10))


def test_twisted_ch_examples():
    u = standard_object("U")
    assert twisted_ch(u, 0) == (2, -1, F(1, 10), F(1, 30))
    e = F(3, 7)
    assert twisted_ch(ChernVector.unchecked(2, -1, F(-1, 10), e), -1) == (2, 1, F(-1, 10), e - F(4, 15))
    beta = F(-5, 3)
    assert twisted_ch(ChernVector(1, 0, 0, 0), beta) == (1, -beta, beta**2 / 2, -beta**3 / 6)


def test_dual_shift_examples():
    assert dual_shift(ChernVector(1, -1, F(1, 2), F(-1, 6))) == ChernVector(-1, -1, F(-1, 2), F(-1, 6))
    g = ChernVector(-2, 3, F(-21, 10), F(9, 10))
    assert twist(dual_shift(g), -2) == standard_object("U")


def test_euler_char_examples():
    e = F(1, 7)
    assert euler_char(ChernVector.unchecked(3, -2, F(3, 5), e)) == 5 * e + F(2, 3)
    assert euler_char(ChernVector.unchecked(2, -1, F(1, 10), e)) == 5 * e - F(1, 6)
    assert euler_char(twist(ChernVector(2, -1, F(-1, 10), F(7, 30)), 1)) == 4


def test_euler_char_of_standard_objects():
    assert euler_char(standard_object("O(0)")) == 1
    assert euler_char(standard_object("O(1)")) == 7
    assert euler_char(standard_object("U")) == 0
    for m in range(-3, 4):
        assert euler_char(standard_object(f"O_L({m})")) == m + 1


def test_slope_and_discriminant():
    assert slope((2, -1, 0)) == F(-1, 2)
    assert slope((0, 1, 0)) == float("inf")
    assert slope((3, -2, 0)) == F(-2, 3)
    assert discriminant((2, -1, F(1, 10))) == 15
    assert discriminant((3, -2, F(3, 5))) == 10
    assert discriminant((2, 0, F(-2, 5))) == 40


def test_rank_two_discriminant_in_chern_classes():
    for c1 in range(-3, 4):
        for c2 in range(-5, 6):
            v = from_chern_classes(2, c1, c2, 0)
            assert discriminant(v) == 20 * c2 - 25 * c1 * c1


def test_standard_objects():
    assert standard_object("U") == ChernVector(2, -1, F(1, 10), F(1, 30))
    assert standard_object("Q(-1)") == ChernVector(3, -2, F(2, 5), F(1, 15))
    assert standard_object("O_L(1)") == ChernVector(0, 0, F(1, 5), F(1, 5))
    assert standard_object("O_L(0)") == ChernVector(0, 0, F(1, 5), 0)
    assert standard_object("O(-2)") == ChernVector(1, -2, 2, F(-4, 3))
    assert standard_object("O_S(0,0,0,0,0)") == ChernVector(0, 1, F(-1, 2), F(1, 6))
    with pytest.raises(DomainError):
        standard_object("V")


def test_heart_decomposition_examples():
    dec = heart_decomposition(ChernVector(-2, 0, F(2, 5), 0))
    assert dec[:4] == (0, 2, 4, 0) and dec.feasible
    dec = heart_decomposition(standard_object("O(0)"))
    assert dec[:4] == (0, 0, 0, 1) and dec.feasible
    dec = heart_decomposition(ChernVector.unchecked(-3, 2, F(-3, 5), F(2, 15)))
    assert dec[:4] == (1, 0, 1, 0) and dec.feasible
    assert not heart_decomposition(standard_object("U")).feasible


def test_json_round_trip():
    v = ChernVector(2, -1, F(-1, 10), F(7, 30))
    text = json.dumps(v.to_json(), sort_keys=True)
    assert ChernVector.from_json(json.loads(text)) == v
    assert v.to_json() == {"r": 2, "c": -1, "d": "-1/10", "e": "7/30"}


@given(lattice_vectors, st.integers(-10, 10))
def test_twist_inverse(v, n):
    assert twist(twist(v, n), -n) == v


@given(lattice_vectors, st.fractions(min_value=-5, max_value=5, max_denominator=12))
def test_discriminant_twist_invariant(v, beta):
    assert discriminant(twisted_ch(v, beta)) == discriminant(v)


@given(lattice_vectors)
def test_chern_class_round_trip(v):
    assert from_chern_classes(*to_chern_classes(v)) == v


@given(lattice_vectors)
def test_dual_shift_involution(v):
    assert dual_shift(dual_shift(v)) == v


@given(lattice_vectors)
def test_heart_decomposition_residual_zero(v):
    a, b, c, d, _ = heart_decomposition(v)
    parts = [
        (-a, standard_object("O(-1)")),
        (b, standard_object("Q(-1)")),
        (-c, standard_object("U")),
        (d, standard_object("O(0)")),
    ]
    total = [F(0)] * 4
    for coef, ch in parts:
        for i, comp in enumerate(ch):
            total[i] += coef * comp
    assert tuple(total) == tuple(v)
