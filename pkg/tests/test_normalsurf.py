import json
from fractions import Fraction

import pytest

from linkcert.normalsurf import (
    BIGON,
    TRIANGLE_S,
    VERTEX_LINK,
    GaussBonnetError,
    NormalSurfaceError,
    SurfaceCurve,
    TruncatedPolyhedron,
    arc_half_disk,
    area_oracle,
    boundary_bigon,
    classify_disk,
    comb_area,
    comb_length_lower_bound,
    counts,
    curve_weight,
    encircled_vertex,
    enumerate_arc_disks,
    enumerate_normal_curves,
    face_parallel_triangle,
    faulty_surface,
    gauss_bonnet,
    is_admissible,
    is_normal,
    oracle_json,
    progressive_arc_bound,
    relative_length,
    segment_type,
    standard_surfaces,
    verify_angled,
    vertex_link,
)
from linkcert.polyhedra import SHADED, WHITE, cusp_tori
from linkcert.slopes import recovery_coords, surgery_coords


@pytest.fixture(scope="module")
def tp(c66):
    return TruncatedPolyhedron(c66.polys[0], 0)


def test_vertex_link_curve(tp):
    v = tp.poly.vertices[0]
    d = vertex_link(tp, v)
    c = d.closed_curve
    assert is_normal(tp, c)
    assert counts(tp, d) == (4, 0, 0)
    assert curve_weight(tp, c) == 4
    assert classify_disk(tp, d) == VERTEX_LINK
    assert encircled_vertex(tp, c) == v


def test_normality_conditions(tp):
    c = vertex_link(tp, tp.poly.vertices[0]).closed_curve
    twice = SurfaceCurve(c.sides * 2, c.faces * 2)
    assert is_normal(tp, twice).condition == 4
    broken = SurfaceCurve(c.sides[:1], c.faces[:1])
    assert not is_normal(tp, broken)
    assert is_normal(tp, SurfaceCurve(c.sides, c.faces, closed=False)).reason == "curve is not closed"


def test_bigon(tp):
    d = boundary_bigon(tp, tp.poly.edges[0])
    assert counts(tp, d) == (0, 2, 0)
    assert comb_area(tp, d) == 0
    assert classify_disk(tp, d) == BIGON
    assert relative_length(tp, d) == 0


def test_face_parallel_triangle(tp):
    shaded = next(f.index for f in tp.poly.faces if f.color == SHADED)
    d = face_parallel_triangle(tp, shaded)
    assert counts(tp, d) == (0, 3, 0)
    assert comb_area(tp, d) == 6
    assert relative_length(tp, d) == 2
    assert classify_disk(tp, d) == TRIANGLE_S


def test_relative_length_needs_boundary(tp):
    with pytest.raises(NormalSurfaceError):
        relative_length(tp, vertex_link(tp, tp.poly.vertices[0]))


def test_arc_half_disk(tp):
    white = next(f.index for f in tp.poly.faces if f.color == WHITE)
    d = arc_half_disk(tp, white)
    assert is_admissible(tp, d)
    assert d.arcs == 1
    assert counts(tp, d) == (0, 0, 1)
    assert comb_area(tp, d) == 6


def test_arc_disks_admissible_and_positive(tp):
    disks = [d for d in enumerate_arc_disks(tp, 3) if is_admissible(tp, d)]
    assert disks
    assert all(comb_area(tp, d) > 0 for d in disks)


def test_enumeration_deterministic(tp):
    a = enumerate_normal_curves(tp, max_weight=4)
    b = enumerate_normal_curves(tp, max_weight=4)
    assert a.complete and a.curves == b.curves
    assert a.pruned > 0
    assert all(is_normal(tp, c) for c in a.curves)
    assert all(curve_weight(tp, c) <= 4 for c in a.curves)


def test_area_oracle_report(c66):
    rep = area_oracle(c66)
    js = rep.to_json()
    assert js["passed"] and js["complete"]
    assert js["weight_cutoff"] == 4
    assert js["classes"]["vertex-link"] == len(c66.polys[0].vertices)
    assert js["classes"]["boundary-bigon"] == len(c66.polys[0].edges)
    assert "seconds" not in js
    assert json.loads(oracle_json([rep]))[0] == js


def test_verify_angled(c66, fig1):
    for dec in (c66, fig1):
        rep = verify_angled(dec)
        assert rep.passed and rep.edge_condition
        assert rep.curves_checked > 0


def test_standard_surfaces(fig1):
    reports = [gauss_bonnet(s) for s in standard_surfaces(fig1)]
    assert all(r.holds for r in reports)
    tori = [r for r in reports if r.label.startswith("vertex links")]
    assert len(tori) == len(cusp_tori(fig1))
    assert all(r.area == 0 and r.euler == 0 for r in tori)


def test_faulty_fixture_rejected(c66):
    with pytest.raises(GaussBonnetError):
        gauss_bonnet(faulty_surface(c66))


def test_segment_types():
    assert segment_type("E", "W", "crossing-circle") == "meridional"
    assert segment_type("S", "N", "crossing-circle") == "longitudinal"
    assert segment_type("E", "W", "knot-strand") == "longitudinal"
    assert segment_type("E", "N", "knot-strand") == "diagonal"
    with pytest.raises(NormalSurfaceError):
        segment_type("E", "E", "knot-strand")


def test_progressive_arcs():
    assert progressive_arc_bound("crossing-circle", "S", ["N"]).kind == "a"
    assert progressive_arc_bound("crossing-circle", "S", ["E", "N"]).kind == "b"
    c = progressive_arc_bound("knot-strand", "W", ["N", "N", "E"])
    assert c.kind == "c" and c.bound == 2
    with pytest.raises(NormalSurfaceError, match="not progressive"):
        progressive_arc_bound("crossing-circle", "S", ["E", "S"])
    with pytest.raises(NormalSurfaceError, match="ends inside"):
        progressive_arc_bound("knot-strand", "W", ["N"])


def test_comb_length_lower_bound(c66):
    cusps = cusp_tori(c66)
    circle = next(c for c in cusps if c.kind == "crossing-circle")
    strand = next(c for c in cusps if c.kind == "knot-strand")
    s = c66.link.circles[circle.owner].removed_full_twists
    b = comb_length_lower_bound(circle, recovery_coords(circle, s))
    assert b.units == 12 and b.strict
    assert Fraction(b.units, 6) == 2
    with pytest.raises(NormalSurfaceError):
        comb_length_lower_bound(strand, surgery_coords(strand, "1/0"))
    with pytest.raises(NormalSurfaceError, match="different cusp"):
        comb_length_lower_bound(strand, recovery_coords(circle, s))
