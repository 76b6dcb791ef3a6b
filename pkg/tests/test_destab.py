import json
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from oracles import brute_destab
from x5tilt.chern import ChernVec2, discriminant
from x5tilt.destab import (
    DELTA_ADDITIVITY,
    EXCLUDED,
    RANK_BOUND,
    SLOPE_NOT_BELOW,
    SearchConfig,
    ch1_window,
    enumerate_destabilizers,
    minimal_ch1_check,
    search_depth,
    survivor_set,
    window_integers,
)
from x5tilt.numerics import DomainError
from x5tilt.tilt import beta_pm
from x5tilt.walls import wall_crosses_ray

TARGETS = [
    (3, -2, F(3, 5)),
    (2, -1, F(1, 10)),
    (2, 0, F(-1, 5)),
    (3, -1, F(1, 10)),
    (2, 0, F(-2, 5)),
    (2, -1, F(-1, 10)),
]
Y_GRID = [F(k, 10) for k in range(-80, 81)]


def _in_box(found, s_hi=6):
    return {(s, x, y) for s, x, y in found if s <= s_hi and -8 <= x <= 8 and -8 <= y <= 8}


def _survivors(v, **kw):
    return survivor_set(enumerate_destabilizers(v, SearchConfig(**kw)))


def test_window_examples():
    assert list(window_integers(*ch1_window((2, -1, F(1, 10)), 3))) == [-2]
    for s in (1, 2, 3):
        assert list(window_integers(*ch1_window((3, -2, F(3, 5)), s))) == []
    assert list(window_integers(*ch1_window((2, 0, F(-1, 5)), 1))) == [0]


def test_window_strictness():
    # a rational beta_- makes the strict and relaxed windows differ
    v = (1, 0, F(-1, 2))  # disc 25, beta_- = -1
    lo, hi = ch1_window(v, 2)
    assert list(window_integers(lo, hi, strict=True)) == []
    assert list(window_integers(lo, hi, strict=False)) == [-2, -1]


@pytest.mark.parametrize(
    "v, expected",
    [
        ((3, -2, F(3, 5)), set()),
        ((2, -1, F(1, 10)), {(3, -2, F(3, 5))}),
        ((2, 0, F(-1, 5)), set()),
        ((3, -1, F(1, 10)), set()),
        ((2, 0, F(-2, 5)), {(3, -1, F(1, 10))}),
    ],
)
def test_survivor_sets(v, expected):
    assert _survivors(v) == expected


def test_exclusion_removes_survivor():
    assert _survivors((2, 0, F(-2, 5)), exclusions=((3, -1, F(1, 10)),)) == set()
    report = enumerate_destabilizers((2, 0, F(-2, 5)), SearchConfig(exclusions=((3, -1, F(1, 10)),)))
    reasons = {r for c in report.candidates for e in c.entries for r in e.reasons}
    assert EXCLUDED in reasons and DELTA_ADDITIVITY in reasons


def test_rank_four_candidate_rejected_by_rank_bound():
    report = enumerate_destabilizers((2, 0, F(-1, 5)))
    assert report.s_max >= 4
    entry = [
        e for c in report.candidates if (c.s, c.x) == (4, -1) for e in c.entries if e.y == F(1, 10)
    ]
    assert len(entry) == 1 and RANK_BOUND in entry[0].reasons


def test_rank_bound_disabled_admits_more():
    strict = _survivors((2, 0, F(-1, 5)))
    loose = _survivors((2, 0, F(-1, 5)), use_rank_bound=False)
    assert strict <= loose and loose


def test_minimal_ch1_examples():
    assert minimal_ch1_check((2, -1, F(1, 10)), -1)
    assert minimal_ch1_check((1, 0, F(-1, 5)), F(-1, 2))
    assert not minimal_ch1_check((2, 0, F(-1, 5)), -1)
    assert not minimal_ch1_check((2, -1, F(1, 10)), 0)


def test_domain_errors():
    with pytest.raises(DomainError):
        enumerate_destabilizers((0, 1, F(0)))
    with pytest.raises(DomainError):
        enumerate_destabilizers((1, 0, F(1, 5)))
    with pytest.raises(DomainError):
        SearchConfig(s_max_override=0)


@pytest.mark.parametrize("v", TARGETS)
def test_brute_force_equivalence(v):
    found = _in_box(_survivors(v, s_max_override=6))
    brute = brute_destab(v, range(1, 7), range(-8, 9), Y_GRID)
    assert found == brute


@pytest.mark.parametrize("v", TARGETS)
def test_search_depth_covers_brute_force(v):
    # ranks beyond s_max contribute nothing in the brute-force box
    s_max = search_depth(ChernVec2(*v))[0]
    s_hi = max(s_max, 12)
    found = _survivors(v, s_max_override=s_hi)
    assert _in_box(found, s_hi) == brute_destab(v, range(1, s_hi + 1), range(-8, 9), Y_GRID)
    assert {f for f in found if f[0] > s_max} == set()


@pytest.mark.parametrize("v", TARGETS)
def test_survivor_walls_cross_beta_minus(v):
    report = enumerate_destabilizers(v)
    bm = beta_pm(v)[0]
    for cand in report.candidates:
        for entry in cand.entries:
            if entry.survives:
                assert entry.wall.is_semicircle
                assert wall_crosses_ray(entry.wall, bm)


@pytest.mark.parametrize("v", TARGETS)
def test_audit_completeness(v):
    report = enumerate_destabilizers(v)
    expected = sum(len(window_integers(*ch1_window(v, s))) for s in range(1, report.s_max + 1))
    assert len(report.candidates) == expected
    for cand in report.candidates:
        if cand.reasons:
            assert cand.reasons == (SLOPE_NOT_BELOW,) and not cand.entries


def test_report_json_is_stable():
    report = enumerate_destabilizers((2, -1, F(1, 10)))
    text = json.dumps(report.to_json(), sort_keys=True)
    assert text == json.dumps(enumerate_destabilizers((2, -1, F(1, 10))).to_json(), sort_keys=True)
    assert json.loads(text)["survivors"] == [{"r": 3, "c": -2, "d": "3/5"}]


@given(st.integers(1, 4), st.integers(-4, 4), st.integers(0, 40))
@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
def test_brute_force_equivalence_random(r, c, n):
    d = F(c * c, 2) - F(n, 5)
    v = (r, c, d)
    disc = discriminant(v)
    assume(0 < disc <= 60)
    assert _in_box(_survivors(v, s_max_override=4), 4) == brute_destab(v, range(1, 5), range(-8, 9), Y_GRID)
