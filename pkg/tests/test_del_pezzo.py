import time
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from x5tilt.bounds import our_bound_class
from x5tilt.chern import ChernVector
from x5tilt.del_pezzo import (
    DivisorClass,
    InconclusiveSearch,
    brute_force_divisor,
    closed_form_max,
    conjecture_bound,
    extension_ch,
    optimize_divisor,
    pushforward_ch,
    split_degree,
)
from x5tilt.numerics import DomainError

# the five clause formulas, keyed by C - 5k
CLAUSES = {
    0: lambda k: F(k * k - k, 2) + F(1, 6),
    1: lambda k: F(5 * k * k - 3 * k - 2, 10) + F(1, 6),
    -1: lambda k: F(5 * k * k - 7 * k, 10) + F(1, 6),
    2: lambda k: F(5 * k * k - k - 2, 10) + F(1, 6),
    -2: lambda k: F(5 * k * k - 9 * k + 2, 10) + F(1, 6),
}


def test_pushforward_examples():
    assert pushforward_ch(DivisorClass(0, (0, 0, 0, 0))) == ChernVector(0, 1, F(-1, 2), F(1, 6))
    assert pushforward_ch(DivisorClass(0, (1, 0, 0, 0))) == ChernVector(0, 1, F(-3, 10), F(-1, 30))
    for k in range(-4, 5):
        ch = pushforward_ch(DivisorClass(3 * k, (-k,) * 4))
        assert (ch.d, ch.e) == (k - F(1, 2), F(k * k - k, 2) + F(1, 6))


def test_optimize_examples():
    res = optimize_divisor(0)
    assert res.max_ch3 == F(1, 6) and res.argmax == (DivisorClass(0, (0, 0, 0, 0)),)
    res = optimize_divisor(1)
    assert res.max_ch3 == F(-1, 30) and len(res.argmax) == 2
    assert optimize_divisor(-2).max_ch3 == F(11, 30)


def test_split_degree():
    assert split_degree(-2) == (0, -2)
    assert split_degree(2) == (0, 2)
    assert split_degree(3) == (1, -2)
    assert split_degree(-3) == (-1, 2)


@pytest.mark.parametrize("k", range(-4, 5))
@pytest.mark.parametrize("j", sorted(CLAUSES))
def test_clause_values(k, j):
    assert optimize_divisor(5 * k + j).max_ch3 == CLAUSES[j](k)


def test_brute_force_small_radius():
    assert brute_force_divisor(0, 6) == optimize_divisor(0)


def test_brute_force_matches_closed_form():
    start = time.perf_counter()
    for big_c in range(-30, 31):
        brute = brute_force_divisor(big_c, 8)
        closed = optimize_divisor(big_c)
        assert brute.max_ch3 == closed.max_ch3 == closed_form_max(big_c)
        assert brute.argmax == closed.argmax
    assert time.perf_counter() - start < 10


def test_brute_force_box_too_small():
    with pytest.raises(InconclusiveSearch):
        brute_force_divisor(30, 0)


@pytest.mark.parametrize("big_c", range(-12, 13))
def test_argmax_tuples_are_balanced(big_c):
    for d in optimize_divisor(big_c).argmax:
        total = sum(d.b)
        assert max(d.b) - min(d.b) <= 1
        assert d.b == tuple(sorted(d.b, reverse=True))
        assert total == big_c - 3 * d.a


@given(st.integers(-50, 50), st.lists(st.integers(-50, 50), min_size=4, max_size=4))
def test_pushforward_on_lattice(a, b):
    ch = pushforward_ch(DivisorClass(a, tuple(b)))
    assert ch.is_lattice()


@pytest.mark.parametrize("k", range(-5, 1))
def test_extension_reproduces_composite_class(k):
    opt = optimize_divisor(5 * k - 2)
    for d in opt.argmax:
        assert extension_ch("c1_neg1", d) == our_bound_class(k)


def test_extension_examples():
    zero = DivisorClass(0, (0, 0, 0, 0))
    assert extension_ch("c1_neg1", zero) == ChernVector(2, -1, F(1, 2), F(-1, 6))
    assert extension_ch("c1_0", zero) == ChernVector(2, 0, F(-2, 5), F(1, 5))
    with pytest.raises(DomainError):
        extension_ch("c1_1", zero)


def test_conjecture_bound_examples():
    assert conjecture_bound(-1, -2) == F(1, 30)
    assert conjecture_bound(0, 0) == F(1, 5)
    assert conjecture_bound(-1, 0) == F(-1, 6)
    with pytest.raises(DomainError):
        conjecture_bound(1, 0)


def test_divisor_class_validation():
    with pytest.raises(DomainError):
        DivisorClass(0, (0, 0, 0))
    assert DivisorClass(1, (0, 2, 1, 0)).canonical() == DivisorClass(1, (2, 1, 0, 0))
    assert DivisorClass(1, (0, 2, 1, 0)).degree == 6
