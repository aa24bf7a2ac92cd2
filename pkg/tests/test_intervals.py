from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cubicalc import (
    EMPTY_1D,
    FULL_LINE,
    Endpoint,
    Interval,
    OneDimArea,
    area1d_complement,
    area1d_normalize,
    area1d_union,
    interval,
    interval_complement,
    interval_from_json,
    interval_intersect,
    interval_merge,
    interval_to_json,
    point,
)

# -- strategies ---------------------------------------------------------------

rationals = st.fractions(min_value=-4, max_value=12, max_denominator=4)


@st.composite
def intervals(draw, allow_infinite=True):
    lo = draw(st.none() | rationals) if allow_infinite else draw(rationals)
    hi = draw(st.none() | rationals) if allow_infinite else draw(rationals)
    if lo is not None and hi is not None and lo > hi:
        lo, hi = hi, lo
    lc = draw(st.booleans())
    hc = draw(st.booleans())
    if lo is not None and lo == hi:
        lc = hc = True
    return interval(lo, hi, lc, hc)


# -- endpoints ----------------------------------------------------------------

def test_endpoint_invariants():
    assert not Endpoint.neg_inf().closed and Endpoint.neg_inf().value is None
    with pytest.raises(ValueError):
        Endpoint("-inf", closed=True)
    with pytest.raises(ValueError):
        Endpoint("finite")
    with pytest.raises(ValueError):
        Endpoint("sideways", 1)


def test_endpoint_lowest_terms():
    assert Endpoint.at(Fraction(2, 4)) == Endpoint.at(Fraction(1, 2))
    assert Endpoint.at("6/4") == Endpoint.at(Fraction(3, 2))


def test_interval_rejects_empty():
    with pytest.raises(ValueError):
        interval(1, 0)
    with pytest.raises(ValueError):
        interval(1, 1, True, False)
    with pytest.raises(ValueError):
        Interval(Endpoint.pos_inf(), Endpoint.pos_inf())
    assert point(1).is_point


# -- intersection -------------------------------------------------------------

def test_intersect_overlap():
    assert interval_intersect(interval(0, 2), interval(1, 3)) == interval(1, 2)


def test_intersect_open_closed_touch_is_empty():
    assert interval_intersect(interval(0, 1, False, False), interval(1, 2)) is None


def test_intersect_point_meet():
    got = interval_intersect(interval(None, 1), interval(1, None))
    assert got == point(1)


# -- complement ---------------------------------------------------------------

def test_complement_closed_interval():
    got = interval_complement(interval(0, 1))
    assert got == [interval(None, 0, True, False), interval(1, None, False, True)]


def test_complement_half_open():
    got = interval_complement(interval(0, 1, False, True))
    assert got == [interval(None, 0, True, True), interval(1, None, False, True)]


def test_complement_full_line():
    assert interval_complement(FULL_LINE) == []


@given(intervals())
@settings(deadline=None)
def test_complement_count(a):
    comp = interval_complement(a)
    assert len(comp) <= 2
    assert (len(comp) == 2) == (a.lo.finite and a.hi.finite)


@given(intervals())
@settings(deadline=None)
def test_double_complement_restores(a):
    outer = area1d_complement(area1d_complement(OneDimArea((a,))))
    assert outer.parts == (a,)


# -- merge --------------------------------------------------------------------

def test_merge_touching_closed():
    assert interval_merge(interval(0, 1, True, False), interval(1, 2)) == interval(0, 2)


def test_merge_open_gap():
    assert interval_merge(interval(0, 1, False, False), interval(1, 2, False, False)) is None


def test_merge_absorption():
    assert interval_merge(interval(0, 3), interval(1, 2)) == interval(0, 3)


# -- normalization ------------------------------------------------------------

def test_normalize_merges_touching():
    got = area1d_normalize([interval(0, 1, False, True), interval(1, 2)])
    assert got.parts == (interval(0, 2, False, True),)


def test_normalize_empty():
    assert area1d_normalize([]) == EMPTY_1D


def test_normalize_absorbs():
    got = area1d_normalize([interval(0, 1), interval(2, 3), interval(0, 3)])
    assert got.parts == (interval(0, 3),)


@given(st.lists(intervals(), max_size=5), st.randoms(use_true_random=False))
@settings(deadline=None)
def test_normalize_order_independent_and_idempotent(parts, rng):
    base = area1d_normalize(parts)
    shuffled = list(parts)
    rng.shuffle(shuffled)
    assert area1d_normalize(shuffled) == base
    assert area1d_normalize(base.parts) == base


@given(st.lists(intervals(), max_size=5), st.lists(rationals, min_size=1, max_size=40))
@settings(deadline=None)
def test_normalize_preserves_membership(parts, probes):
    out = area1d_normalize(parts)
    for q in probes:
        assert out.contains(q) == any(p.contains(q) for p in parts)


def test_membership_oracle_on_random_rationals():
    import random

    rng = random.Random(9)
    parts = [interval(0, 3, False, True), interval(4, 5), interval(7, None, False, True)]
    area = area1d_normalize(parts)
    for _ in range(1000):
        q = Fraction(rng.randrange(-40, 120), rng.randrange(1, 12))
        assert area.contains(q) == any(p.contains(q) for p in parts)


def test_union_helper():
    a = area1d_normalize([interval(0, 1)])
    b = area1d_normalize([interval(1, 2), interval(5, 6)])
    assert area1d_union(a, b).parts == (interval(0, 2), interval(5, 6))


# -- JSON ---------------------------------------------------------------------

def test_interval_json_shape():
    got = interval_to_json(interval(None, Fraction(3, 2), True, False))
    assert got == {"lo": "-inf", "lo_closed": False, "hi": "3/2", "hi_closed": False}


def test_interval_json_round_trip():
    for a in (interval(0, 2), interval(None, 1, True, True), point(Fraction(7, 3)),
              FULL_LINE, interval(Fraction(-1, 2), None, False, True)):
        assert interval_from_json(interval_to_json(a)) == a


def test_interval_json_rejects_closed_infinity():
    with pytest.raises(ValueError):
        interval_from_json({"lo": "-inf", "lo_closed": True, "hi": "1", "hi_closed": True})
