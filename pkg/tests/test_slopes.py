import pytest

from linkcert.augment import augment
from linkcert.generate import pretzel
from linkcert.polyhedra import UNKNOWN, cusp_tori, decompose
from linkcert.slopes import (
    CROSSING_CIRCLE,
    HYPERBOLIC,
    HYPERBOLIKE,
    INCONCLUSIVE,
    KNOT_STRAND,
    WILDCARD,
    LengthBound,
    SlopeCoords,
    SlopeError,
    combinatorial_length_bound,
    geometric_length_bound,
    recovery_coords,
    six_theorem_check,
    surgery_coords,
    two_pi_check,
)


@pytest.fixture(scope="module")
def cusps():
    return cusp_tori(decompose(augment(pretzel(7, 7, 7, 6))))


def circle(cusps, twisted):
    return next(c for c in cusps if c.kind == CROSSING_CIRCLE and bool(c.half_twist) == twisted)


def strand(cusps):
    return next(c for c in cusps if c.kind == KNOT_STRAND)


def test_crossing_circle_slope(cusps):
    c = circle(cusps, twisted=True)
    h = c.half_twist
    x = surgery_coords(c, "1/3")
    assert (x.w_coeff, x.s_coeff) == (1, h + 6)
    assert x.nontrivial
    m = surgery_coords(c, "1/0")
    assert (m.w_coeff, m.s_coeff) == (1, h) and not m.nontrivial


def test_slope_syntax(cusps):
    c = circle(cusps, twisted=False)
    assert surgery_coords(c, (1, 2)).slope == "1/2"
    assert surgery_coords(c, "inf").slope == "1/0"
    assert surgery_coords(c, 2).slope == "2/1"
    for bad in ("one/two", "0/0", "1/2/3"):
        with pytest.raises(SlopeError):
            surgery_coords(c, bad)
    with pytest.raises(SlopeError, match="definite slope"):
        surgery_coords(c, WILDCARD)


def test_strand_slopes(cusps):
    k = strand(cusps)
    n = k.longitude[0]
    assert n == 8
    wild = surgery_coords(k)
    assert (wild.w_coeff, wild.s_coeff) == (n, UNKNOWN)
    assert surgery_coords(k, "5/3").w_coeff == 3 * n
    assert not surgery_coords(k, "1/0").nontrivial


def test_recovery_is_meridian_when_nothing_removed(cusps):
    c = circle(cusps, twisted=False)
    r = recovery_coords(c, 0)
    assert r.nontrivial
    assert (r.w_coeff, r.s_coeff) == c.meridian
    with pytest.raises(SlopeError):
        recovery_coords(strand(cusps), 1)


def test_geometric_values(cusps):
    c = circle(cusps, twisted=False)  # six crossings
    b = geometric_length_bound(recovery_coords(c, 3))
    assert b.value == "sqrt(37)" and b.exceeds_threshold()
    t = circle(cusps, twisted=True)  # seven crossings
    bt = geometric_length_bound(recovery_coords(t, 3 * t.half_twist))
    assert bt.value == "sqrt(50)"
    assert geometric_length_bound(surgery_coords(strand(cusps))).value == "8"


def test_trivial_slope_has_no_bound(cusps):
    trivial = surgery_coords(strand(cusps), "1/0")
    with pytest.raises(SlopeError):
        geometric_length_bound(trivial)
    with pytest.raises(SlopeError):
        combinatorial_length_bound(trivial)


def test_combinatorial_values():
    circle6 = combinatorial_length_bound(SlopeCoords(0, 1, 6, CROSSING_CIRCLE, True))
    assert circle6.value == "2pi" and circle6.strict and circle6.exceeds_threshold()
    strand6 = combinatorial_length_bound(SlopeCoords(0, 6, UNKNOWN, KNOT_STRAND, True))
    assert strand6.value == "2pi" and not strand6.exceeds_threshold()
    strand1 = combinatorial_length_bound(SlopeCoords(0, 1, UNKNOWN, KNOT_STRAND, True))
    assert strand1.value == "pi/3"


def test_bound_json():
    b = LengthBound(2, "combinatorial", 7, units=14, strict=True)
    assert b.to_json() == {"cusp": 2, "kind": "combinatorial", "value": "7pi/3", "strict": True}


def geo(cusp, r):
    return LengthBound(cusp, "geometric", 0, radicand=r)


def comb(cusp, units, strict=False):
    return LengthBound(cusp, "combinatorial", 0, units=units, strict=strict)


def test_six_theorem():
    assert six_theorem_check([geo(0, 37), geo(1, 49)], True).status == HYPERBOLIKE
    v = six_theorem_check([geo(0, 36), geo(1, 49)], True)
    assert v.status == INCONCLUSIVE and v.failing == (0,)
    partial = six_theorem_check([geo(0, 49)], False)
    assert partial.status == INCONCLUSIVE and "every cusp" in partial.reason


def test_two_pi_theorem():
    assert two_pi_check([comb(0, 14)], True).status == HYPERBOLIKE
    assert two_pi_check([comb(0, 14)], False).status == HYPERBOLIC
    assert two_pi_check([comb(0, 12, strict=True)], False).certified
    assert two_pi_check([comb(0, 12)], True).failing == (0,)


def test_check_errors():
    with pytest.raises(SlopeError, match="no filled cusps"):
        two_pi_check([], True)
    with pytest.raises(SlopeError, match="needs combinatorial"):
        two_pi_check([geo(0, 50)], True)
    with pytest.raises(SlopeError, match="without a bound"):
        six_theorem_check([geo(0, 50)], True, filled=[0, 1])
