import json
from collections import Counter

import pytest

from linkcert.augment import augment
from linkcert.generate import figure_one, pretzel, two_bridge
from linkcert.polyhedra import (
    SHADED,
    UNKNOWN,
    WHITE,
    cusp_json,
    cusp_tori,
    decompose,
    in_lattice,
    reduce_lattice,
)


@pytest.fixture(scope="module")
def c67():
    return decompose(augment(two_bridge(6, 7)))


def test_two_polyhedra_mirror(c67):
    p1, p2 = c67.polys
    assert (p1.name, p2.name) == ("P1", "P2")
    assert c67.isomorphic_halves()
    assert Counter(f.color for f in p1.faces) == Counter(f.color for f in p2.faces)


def test_checkerboard(c67):
    # every edge has one shaded and one white side
    for poly in c67.polys:
        for e, fs in poly.edge_faces.items():
            assert sorted(poly.faces[i].color for i in fs) == [SHADED, WHITE]


def test_shaded_triangles(c67):
    t = 2
    for poly in c67.polys:
        shaded = [f for f in poly.faces if f.color == SHADED]
        assert len(shaded) == 2 * t
        assert all(f.degree == 3 for f in shaded)


def test_vertices_four_valent(c67):
    for poly in c67.polys:
        assert all(len(ring) == 4 for ring in poly.vertex_faces.values())


def test_gluing_checks(c67):
    assert c67.check_gluing() == []
    assert all(len(cls) == 4 for cls in c67.edge_classes)
    kinds = Counter(g.kind for g in c67.pairings)
    assert kinds["white"] == sum(f.color == WHITE for f in c67.polys[0].faces)


def test_half_twist_pairing_crosses_polyhedra():
    dec = decompose(augment(pretzel(7, 6, 6)))
    twisted = [g for g in dec.pairings if g.kind == "shaded-twist"]
    flat = [g for g in dec.pairings if g.kind == "shaded"]
    assert twisted and all(g.source[0] != g.target[0] for g in twisted)
    assert flat and all(g.source[0] == g.target[0] for g in flat)


def test_cusp_counts(c67):
    cusps = cusp_tori(c67)
    assert len(cusps) == 1 + 2
    assert sorted(c.kind for c in cusps) == ["crossing-circle"] * 2 + ["knot-strand"]


def test_flat_crossing_circle_two_rectangles(c67):
    flat = next(c for c in cusp_tori(c67) if c.kind == "crossing-circle" and not c.half_twist)
    assert flat.num_tiles == 2
    assert flat.meridian == (1, 0)
    assert flat.longitude == (0, 2)


def test_half_twist_shears_meridian(c67):
    twisted = next(c for c in cusp_tori(c67) if c.half_twist)
    assert twisted.meridian == (1, twisted.half_twist)
    assert twisted.longitude == (0, 2)
    assert in_lattice(twisted.lattice, twisted.meridian)


def test_knot_strand_block(c67):
    strand = next(c for c in cusp_tori(c67) if c.kind == "knot-strand")
    n = 4  # a knot visits both regions twice
    assert strand.num_tiles == 2 * n
    columns = Counter(x for _, (x, _), _ in strand.placement)
    assert len(columns) == n and set(columns.values()) == {2}
    assert strand.meridian == (0, 2)
    assert strand.longitude == (n, UNKNOWN)


def test_reduce_lattice():
    basis = reduce_lattice([(4, 0), (0, 2), (4, 2), (8, 4)])
    assert basis == ((4, 0), (0, 2))
    assert in_lattice(basis, (12, -6))
    assert not in_lattice(basis, (2, 0))


def test_json_dumps_are_stable():
    dec = decompose(augment(figure_one()))
    a = json.dumps(dec.to_json(), sort_keys=True)
    b = json.dumps(decompose(augment(figure_one())).to_json(), sort_keys=True)
    assert a == b
    cusps = json.loads(cusp_json(cusp_tori(dec)))
    assert [c["tiles"] for c in cusps] == [12, 2, 2, 2]


def test_figure_one_half_twists():
    dec = decompose(augment(figure_one()))
    circles = {c.owner: c for c in cusp_tori(dec) if c.kind == "crossing-circle"}
    counts = {r.index: r.count for r in figure_one().twist_regions}
    for owner, c in circles.items():
        assert (c.half_twist != 0) == (counts[owner] % 2 == 1)
