from fractions import Fraction

import pytest

from linkcert.augment import AugmentError, augment, crossing_circle, recovery_slopes
from linkcert.generate import connected_sum, figure_one, pretzel, table_diagram, two_bridge


def circle_with(count, d):
    return next(c for c in augment(d).circles if c.crossings == count)


def test_seven_crossings():
    c = circle_with(7, pretzel(7, 6, 6))
    assert abs(c.removed_full_twists) == 3
    assert abs(c.half_twist) == 1
    assert c.half_twist == c.handedness
    assert c.removed_full_twists == 3 * c.handedness


def test_six_crossings():
    c = circle_with(6, pretzel(7, 6, 6))
    assert abs(c.removed_full_twists) == 3
    assert c.half_twist == 0


def test_count_invariant():
    for d in [pretzel(5, 6, 7, 8), pretzel(-3, 4, 9), figure_one(), two_bridge(2, 9)]:
        for c in augment(d).circles:
            assert c.crossings == 2 * abs(c.removed_full_twists) + abs(c.half_twist)
            assert (c.half_twist == 0) == (c.crossings % 2 == 0)


def test_opposite_handedness():
    a = augment(pretzel(-7, 6, 6)).circles
    b = augment(pretzel(7, 6, 6)).circles
    assert a[0].crossings == b[0].crossings == 7
    assert a[0].handedness == -b[0].handedness


def test_trefoil_rejected():
    with pytest.raises(AugmentError, match="closed 2-braid or single twist region"):
        augment(table_diagram("3_1"))


def test_not_prime_rejected():
    with pytest.raises(AugmentError, match="not prime"):
        augment(connected_sum(table_diagram("5_2"), table_diagram("5_2")))


def test_not_twist_reduced_rejected():
    with pytest.raises(AugmentError, match="twist-reduced"):
        augment(pretzel(1, 3, 1, 3))


def test_recovery_slopes():
    a = augment(figure_one())
    slopes = dict(recovery_slopes(a))
    by_count = {c.region: c.crossings for c in a.circles}
    for region, slope in slopes.items():
        n = by_count[region]
        if n <= 1:
            assert slope is None
        else:
            assert abs(slope) == Fraction(1, n // 2)


def test_flat_view():
    assert augment(pretzel(6, 6, 6)).flat
    assert not augment(pretzel(6, 7, 6)).flat
    assert augment(pretzel(6, 7, 6)).flat_crossings == 0


def test_json_shape():
    js = augment(pretzel(6, 7, 8)).to_json()
    assert set(js) == {"base", "circles"}
    assert [c["a"] for c in js["circles"]] == [6, 7, 8]
    assert all(set(c) == {"region", "a", "sigma", "s", "half_twist"} for c in js["circles"])


def test_crossing_circle_of_lone_crossing():
    region = next(r for r in figure_one().twist_regions if r.count == 1)
    c = crossing_circle(region)
    assert c.removed_full_twists == 0 and abs(c.half_twist) == 1
    assert c.recovery_slope is None
