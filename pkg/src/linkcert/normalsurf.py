"""Normal curves, admissible disks and combinatorial area.

The boundary of a truncated polyhedron is a sphere made of

* interior faces (truncated copies of the polyhedron's faces) whose sides
  alternate between boundary edges ``("B", face, vertex)`` and interior
  edges ``("I", edge)``, and
* boundary faces ``("V", vertex)``, one rectangle per ideal vertex.

A curve is recorded by the sides it crosses, in order, together with the
face holding each segment.  Arc endpoints inside a face are written as
``("pt", tag)`` instead of a side.

All areas and lengths are integers in units of pi/6.  With every external
angle equal to pi/2 the combinatorial area of a disk is

    a = 3*E + 6*B - 12 + 18*A

for E interior-edge crossings, B boundary segments and A interior arcs.
"""

from __future__ import annotations

import json
import sys
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .diagram import _UnionFind
from .polyhedra import SHADED, WHITE, Decomposition, Polyhedron, cusp_tori

ARC_END = ("pt",)

PI = 6  # pi in units of pi/6
EPS = 3  # external angle pi/2

DEFAULT_EXHAUSTIVE_EDGES = 30


class NormalSurfaceError(ValueError):
    pass


class GaussBonnetError(NormalSurfaceError):
    """Disks do not glue into a surface along the given data."""


# ---------------------------------------------------------------------------
# the boundary complex


class TruncatedPolyhedron:
    def __init__(self, poly: Polyhedron, index: int = 0):
        self.poly = poly
        self.index = index
        sides: list[tuple] = []
        sid: dict[tuple, int] = {}

        def side(key):
            if key not in sid:
                sid[key] = len(sides)
                sides.append(key)
            return sid[key]

        faces: list[tuple] = []
        face_sides: list[list[int]] = []
        face_nodes: list[list[tuple]] = []
        for f in poly.faces:
            cyc, nodes = [], []
            n = f.degree
            for i in range(n):
                v, e = f.vertices[i], f.edges[i]
                cyc.append(side(("B", f.index, v)))
                cyc.append(side(("I", e)))
                nodes.append((e, v))
                nodes.append((e, f.vertices[(i + 1) % n]))
            faces.append(("F", f.index))
            face_sides.append(cyc)
            face_nodes.append(nodes)
        for v in poly.vertices:
            cyc, nodes = [], []
            ring = poly.vertex_faces[v]
            corners = poly.vertex_corners[v]
            for k, fi in enumerate(ring):
                cyc.append(side(("B", fi, v)))
                nodes.append((corners[k], v))
            faces.append(("V", v))
            face_sides.append(cyc)
            face_nodes.append(nodes)
        self.sides = sides
        self.side_id = sid
        self.faces = faces
        self.face_id = {k: i for i, k in enumerate(faces)}
        self.face_sides = face_sides
        self.face_nodes = face_nodes
        side_faces = defaultdict(list)
        side_pos = defaultdict(dict)
        for fid, cyc in enumerate(face_sides):
            for pos, s in enumerate(cyc):
                side_faces[s].append(fid)
                side_pos[s][fid] = pos
        for s in range(len(sides)):
            if len(side_faces[s]) != 2:
                raise NormalSurfaceError(f"side {sides[s]} borders {len(side_faces[s])} faces")
        self.side_faces = [tuple(side_faces[s]) for s in range(len(sides))]
        self.side_pos = [dict(side_pos[s]) for s in range(len(sides))]
        self.is_boundary_face = [k[0] == "V" for k in faces]
        self.is_interior_side = [k[0] == "I" for k in sides]
        self.face_color = [
            poly.faces[k[1]].color if k[0] == "F" else "boundary" for k in faces
        ]

    @property
    def num_interior_edges(self) -> int:
        return sum(self.is_interior_side)

    def other_face(self, s: int, f: int) -> int:
        a, b = self.side_faces[s]
        return b if a == f else a

    def adjacent_in_face(self, f: int, a: int, b: int) -> bool:
        n = len(self.face_sides[f])
        pa, pb = self.side_pos[a][f], self.side_pos[b][f]
        return (pa - pb) % n in (1, n - 1)

    def node_sets(self):
        """Node groups: boundary face of a vertex, interior edge, interior face."""
        vertex = {}
        face = {}
        for fid, k in enumerate(self.faces):
            if k[0] == "V":
                vertex[k[1]] = frozenset(self.face_nodes[fid])
            else:
                face[k[1]] = frozenset(self.face_nodes[fid])
        edge = {}
        for e, (u, w) in self.poly.edge_ends.items():
            edge[e] = frozenset({(e, u), (e, w)})
        return vertex, edge, face


# ---------------------------------------------------------------------------
# curves and disks


@dataclass(frozen=True)
class SurfaceCurve:
    """``sides[i]`` is crossed, then a segment in ``faces[i]`` leads to ``sides[i+1]``.

    A closed curve's last segment returns to ``sides[0]``.  An open curve
    has one more entry in ``sides`` than in ``faces``, and its first and
    last entries are ``("pt", tag)`` arc endpoints.
    """

    sides: tuple
    faces: tuple
    closed: bool = True

    def segments(self) -> list[tuple]:
        n = len(self.faces)
        if self.closed:
            return [(self.faces[i], self.sides[i], self.sides[(i + 1) % n]) for i in range(n)]
        return [(self.faces[i], self.sides[i], self.sides[i + 1]) for i in range(n)]


@dataclass(frozen=True)
class AdmissibleDisk:
    """A disk in one polyhedron.

    ``pieces`` hold the part of the boundary on the polyhedron's surface:
    either one closed curve, or open curves each closed up by an interior
    arc.
    """

    poly: int
    pieces: tuple[SurfaceCurve, ...]

    @property
    def arcs(self) -> int:
        return sum(1 for p in self.pieces if not p.closed)

    @property
    def closed_curve(self) -> Optional[SurfaceCurve]:
        if len(self.pieces) == 1 and self.pieces[0].closed:
            return self.pieces[0]
        return None


def curve_from_keys(tp: TruncatedPolyhedron, sides: Sequence, faces: Sequence, closed=True) -> SurfaceCurve:
    """Build a curve from side keys and face keys."""
    s = tuple(x if (isinstance(x, tuple) and x[0] == "pt") else tp.side_id[x] for x in sides)
    f = tuple(tp.face_id[k] for k in faces)
    return SurfaceCurve(s, f, closed)


def counts(tp: TruncatedPolyhedron, disk: AdmissibleDisk) -> tuple[int, int, int]:
    """(interior edge crossings, boundary segments, interior arcs)."""
    E = B = 0
    for piece in disk.pieces:
        for s in piece.sides:
            if not isinstance(s, tuple) and tp.is_interior_side[s]:
                E += 1
        for f in piece.faces:
            if tp.is_boundary_face[f]:
                B += 1
    return E, B, disk.arcs


def comb_area(tp: TruncatedPolyhedron, disk: AdmissibleDisk) -> int:
    """Combinatorial area in units of pi/6."""
    E, B, A = counts(tp, disk)
    return EPS * E + PI * B - 2 * PI + 3 * PI * A


def relative_length(tp: TruncatedPolyhedron, disk: AdmissibleDisk) -> Fraction:
    """a(D) / |dD cap dM| in units of pi/6."""
    _, B, _ = counts(tp, disk)
    if B == 0:
        raise NormalSurfaceError("disk does not meet the boundary of the manifold")
    return Fraction(comb_area(tp, disk), B)


# ---------------------------------------------------------------------------
# normality and admissibility


@dataclass(frozen=True)
class Check:
    ok: bool
    condition: int = 0
    reason: str = ""

    def __bool__(self):
        return self.ok


def _segment_problem(tp, f, a, b) -> Optional[tuple[int, str]]:
    pa = isinstance(a, tuple)
    pb = isinstance(b, tuple)
    if f < 0 or f >= len(tp.faces):
        raise NormalSurfaceError(f"no face {f}")
    for x in (a, b):
        if not isinstance(x, tuple) and f not in tp.side_pos[x]:
            raise NormalSurfaceError(f"side {tp.sides[x]} is not on face {tp.faces[f]}")
        if isinstance(x, tuple) and tp.is_boundary_face[f]:
            return 1, "arc endpoint lies in a boundary face"
    if pa or pb:
        return None
    if a == b:
        return 2, f"segment in {tp.faces[f]} has both ends on {tp.sides[a]}"
    if not tp.is_boundary_face[f] and tp.adjacent_in_face(f, a, b):
        return 2, f"segment in {tp.faces[f]} joins adjacent interior and boundary edges"
    return None


def _interleave(n, c1, c2) -> bool:
    a, b = sorted(c1)
    x, y = c2
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def _chords(tp, curve: SurfaceCurve):
    by_face = defaultdict(list)
    for f, a, b in curve.segments():
        if isinstance(a, tuple) or isinstance(b, tuple):
            continue
        by_face[f].append((tp.side_pos[a][f], tp.side_pos[b][f]))
    return by_face


def is_simple(tp: TruncatedPolyhedron, curve: SurfaceCurve) -> bool:
    crossed = [s for s in curve.sides if not isinstance(s, tuple)]
    if len(crossed) != len(set(crossed)):
        return False
    for f, chords in _chords(tp, curve).items():
        n = len(tp.face_sides[f])
        for i in range(len(chords)):
            for j in range(i):
                if _interleave(n, chords[i], chords[j]):
                    return False
    return True


def _structure(tp, curve: SurfaceCurve):
    for f, a, b in curve.segments():
        _segment_problem(tp, f, a, b)  # raises on nonexistent data
    n = len(curve.faces)
    for i in range(len(curve.sides)):
        s = curve.sides[i]
        if isinstance(s, tuple):
            continue
        before = curve.faces[i - 1] if (curve.closed or i > 0) else None
        after = curve.faces[i] if i < n else None
        if before is not None and after is not None and {before, after} != set(tp.side_faces[s]):
            return False
    return True


def is_normal(tp: TruncatedPolyhedron, curve: SurfaceCurve) -> Check:
    if not curve.closed:
        return Check(False, 3, "curve is not closed")
    if not _structure(tp, curve):
        return Check(False, 1, "consecutive segments do not meet across a shared edge")
    for f, a, b in curve.segments():
        p = _segment_problem(tp, f, a, b)
        if p:
            return Check(False, *p)
    if len(curve.faces) < 2:
        return Check(False, 3, "curve lies in a single face")
    crossed = list(curve.sides)
    if len(crossed) != len(set(crossed)):
        return Check(False, 4, "curve meets an edge more than once")
    bfaces = [f for f in curve.faces if tp.is_boundary_face[f]]
    if len(bfaces) != len(set(bfaces)):
        return Check(False, 5, "curve meets a boundary face more than once")
    if not is_simple(tp, curve):
        return Check(False, 0, "curve is not simple")
    return Check(True)


def is_admissible(tp: TruncatedPolyhedron, disk: AdmissibleDisk) -> Check:
    closed = [p for p in disk.pieces if p.closed]
    if closed and len(disk.pieces) > 1:
        return Check(False, 2, "boundary mixes a closed curve with arcs")
    for piece in disk.pieces:
        if not _structure(tp, piece):
            return Check(False, 1, "consecutive segments do not meet across a shared edge")
        if not piece.closed:
            for end in (piece.sides[0], piece.sides[-1]):
                if not isinstance(end, tuple):
                    return Check(False, 1, "arc endpoint is not inside an interior face")
        for f, a, b in piece.segments():
            p = _segment_problem(tp, f, a, b)
            if p:
                return Check(False, 3 if piece.closed else 4, p[1])
        if piece.closed and len(piece.faces) < 2:
            return Check(False, 3, "curve lies in a single face")
    return Check(True)


# ---------------------------------------------------------------------------
# classification


VERTEX_LINK = "vertex-link"
BIGON = "boundary-bigon"
TRIANGLE_S = "ideal-triangle-S"
TRIANGLE_W = "ideal-triangle-W"
TRIANGLE_N = "ideal-triangle-N"
GENERIC = "generic"


def curve_sides(tp: TruncatedPolyhedron, curve: SurfaceCurve) -> list[frozenset]:
    """Split the nodes of the boundary sphere by a simple closed curve."""
    nodes = sorted({n for ns in tp.face_nodes for n in ns}, key=repr)
    uf = _UnionFind(nodes)
    chords = _chords(tp, curve)
    for fid, ns in enumerate(tp.face_nodes):
        cs = chords.get(fid, [])
        groups = {}
        for j, node in enumerate(ns):
            p = j + 0.5  # node j sits between side j and side j+1
            sig = tuple(min(a, b) < p < max(a, b) for a, b in cs)
            if sig in groups:
                uf.union(groups[sig], node)
            else:
                groups[sig] = node
    out = defaultdict(set)
    for n in nodes:
        out[uf.find(n)].add(n)
    return sorted((frozenset(s) for s in out.values()), key=len)


def parallel_segments(tp: TruncatedPolyhedron, curve: SurfaceCurve) -> list[int]:
    """Indices of interior segments that cut off a single interior edge."""
    out = []
    for i, (f, a, b) in enumerate(curve.segments()):
        if tp.is_boundary_face[f] or isinstance(a, tuple) or isinstance(b, tuple):
            continue
        if tp.is_interior_side[a] or tp.is_interior_side[b]:
            continue
        n = len(tp.face_sides[f])
        if (tp.side_pos[a][f] - tp.side_pos[b][f]) % n in (2, n - 2):
            out.append(i)
    return out


def classify_disk(tp: TruncatedPolyhedron, disk: AdmissibleDisk) -> str:
    curve = disk.closed_curve
    if curve is None or not is_simple(tp, curve):
        return GENERIC
    E, B, _ = counts(tp, disk)
    if (E, B) not in ((4, 0), (0, 2), (0, 3)):
        return GENERIC
    sides = curve_sides(tp, curve)
    vertex, edge, face = tp.node_sets()
    if (E, B) == (4, 0):
        return VERTEX_LINK if any(s in vertex.values() for s in sides) else GENERIC
    if (E, B) == (0, 2):
        return BIGON if any(s in edge.values() for s in sides) else GENERIC
    # parallel to a face: one side holds nothing but pieces of that face's
    # edges, so the disk can be pushed into the face
    for fi, ns in face.items():
        if any(s <= ns for s in sides):
            return TRIANGLE_S if tp.poly.faces[fi].color == SHADED else TRIANGLE_W
    interior = [f for f in curve.faces if not tp.is_boundary_face[f]]
    if not parallel_segments(tp, curve) and all(tp.face_color[f] == WHITE for f in interior):
        return TRIANGLE_N
    return GENERIC


def encircled_vertex(tp: TruncatedPolyhedron, curve: SurfaceCurve):
    vertex, _, _ = tp.node_sets()
    sides = curve_sides(tp, curve)
    for v, ns in vertex.items():
        if ns in sides:
            return v
    return None


# ---------------------------------------------------------------------------
# enumeration


@dataclass
class Enumeration:
    curves: list[SurfaceCurve]
    complete: bool
    max_len: Optional[int]
    seconds: float
    max_weight: Optional[int] = None
    pruned: int = 0

    def __len__(self):
        return len(self.curves)


def curve_weight(tp: TruncatedPolyhedron, curve: SurfaceCurve) -> int:
    """Interior edges crossed plus boundary segments.

    Every normal curve of weight at least 5 bounds a disk of area at least
    pi/2 whose relative length, when defined, is at least pi/2.
    """
    E = sum(1 for s in curve.sides if not isinstance(s, tuple) and tp.is_interior_side[s])
    return E + sum(1 for f in curve.faces if tp.is_boundary_face[f])


def enumerate_normal_curves(
    tp: TruncatedPolyhedron,
    limit: Optional[int] = None,
    max_len: Optional[int] = None,
    only_interior: bool = False,
    max_weight: Optional[int] = None,
) -> Enumeration:
    """All normal curves, each listed once, in a deterministic order.

    ``max_len`` bounds the number of crossed sides; by default the search
    is exhaustive when the polyhedron has at most 30 interior edges and
    stops at length 12 otherwise.  ``limit`` caps the number of curves.
    ``only_interior`` restricts to curves avoiding boundary faces.

    ``max_weight`` drops every partial curve whose weight (see
    :func:`curve_weight`) already exceeds the cap.  Weight only grows along
    a path, so the result is still every normal curve of weight at most
    the cap, and the run counts as complete.
    """
    if max_len is None and max_weight is None and tp.num_interior_edges > DEFAULT_EXHAUSTIVE_EDGES:
        max_len = 12
    t0 = time.perf_counter()
    S = len(tp.sides)
    face_sides = tp.face_sides
    side_faces = tp.side_faces
    side_pos = tp.side_pos
    isb = tp.is_boundary_face
    interior = tp.is_interior_side
    out: list[SurfaceCurve] = []
    state = {"complete": True, "pruned": 0}
    cap = max_len if max_len is not None else S
    wcap = max_weight if max_weight is not None else 4 * S

    # exits from side x across face f: (side, position, next face, weight step)
    exits = {}
    for f, cyc in enumerate(face_sides):
        n = len(cyc)
        for p, x in enumerate(cyc):
            cand = []
            for q, y in enumerate(cyc):
                if q == p:
                    continue
                if not isb[f] and (q - p) % n in (1, n - 1):
                    continue
                g = side_faces[y][0] if side_faces[y][1] == f else side_faces[y][1]
                if only_interior and isb[g]:
                    continue
                cand.append((y, q, g, interior[y] + isb[g]))
            exits[(x, f)] = cand

    used = bytearray(S)
    bused = bytearray(len(face_sides))
    chords: list[list[tuple[int, int]]] = [[] for _ in face_sides]
    path: list[int] = []
    fpath: list[int] = []

    def ok_chord(f, p, q):
        a, b = (p, q) if p < q else (q, p)
        for x, y in chords[f]:
            if (a < x < b) != (a < y < b):
                return False
        return True

    sys.setrecursionlimit(max(1000, 4 * S + 100))

    def dfs(x0, close_face, cur, f, w):
        # at side `cur`, about to draw a segment inside face f
        if limit is not None and len(out) >= limit:
            state["complete"] = False
            return
        if isb[f] and bused[f]:
            return
        p = side_pos[cur][f]
        for y, q, g, dw in exits[(cur, f)]:
            if y == x0:
                if f == close_face and len(path) >= 2 and ok_chord(f, p, q):
                    out.append(SurfaceCurve(tuple(path), tuple(fpath) + (f,)))
                continue
            if y < x0 or used[y]:
                continue
            if w + dw > wcap:
                state["pruned"] += 1
                continue
            if len(path) >= cap:
                state["complete"] = False
                continue
            if not ok_chord(f, p, q):
                continue
            used[y] = 1
            chords[f].append((p, q))
            if isb[f]:
                bused[f] = 1
            path.append(y)
            fpath.append(f)
            dfs(x0, close_face, y, g, w + dw)
            path.pop()
            fpath.pop()
            if isb[f]:
                bused[f] = 0
            chords[f].pop()
            used[y] = 0

    for x0 in range(S):
        fa, fb = side_faces[x0]
        if only_interior and (isb[fa] or isb[fb]):
            continue
        used[x0] = 1
        path.append(x0)
        dfs(x0, fb, x0, fa, interior[x0] + isb[fa])
        path.pop()
        used[x0] = 0
    return Enumeration(out, state["complete"], max_len, time.perf_counter() - t0,
                       max_weight, state["pruned"])


def enumerate_arc_disks(tp: TruncatedPolyhedron, max_len: int = 4) -> list[AdmissibleDisk]:
    """Disks closed up by one interior arc, crossing at most ``max_len`` sides.

    The surface part starts at an arc endpoint inside an interior face,
    crosses sides without repeating one and stops at an arc endpoint in an
    interior face.  Segments obey the same local rules as normal curves.
    """
    out = []
    start, stop = ("pt", "a"), ("pt", "b")

    def extend(sides, faces, f):
        cur = sides[-1]
        if not tp.is_boundary_face[f]:
            piece = SurfaceCurve(tuple(sides) + (stop,), tuple(faces) + (f,), closed=False)
            out.append(AdmissibleDisk(tp.index, (piece,)))
        if len(sides) - 1 >= max_len:
            return
        for y in tp.face_sides[f]:
            if y in sides:
                continue
            if not isinstance(cur, tuple) and _segment_problem(tp, f, cur, y):
                continue
            extend(sides + [y], faces + [f], tp.other_face(y, f))

    for f in range(len(tp.faces)):
        if not tp.is_boundary_face[f]:
            extend([start], [], f)
    return out


# ---------------------------------------------------------------------------
# Gauss-Bonnet on glued surfaces


@dataclass
class Surface:
    """Disks in the polyhedra of a decomposition, glued along interior segments.

    ``pairs`` lists ``((disk, segment), (disk, segment))`` identifications;
    when omitted they are found by matching segments across face pairings.
    """

    dec: Decomposition
    disks: list[AdmissibleDisk]
    pairs: Optional[list[tuple[tuple[int, int], tuple[int, int]]]] = None
    label: str = ""

    @cached_property
    def tps(self) -> list[TruncatedPolyhedron]:
        return [TruncatedPolyhedron(p, i) for i, p in enumerate(self.dec.polys)]


def _polygon(tp: TruncatedPolyhedron, disk: AdmissibleDisk):
    """Polygon sides of a disk: ("seg", face, a, b) / ("bdy", face) / ("arc",)."""
    out = []
    for piece in disk.pieces:
        for f, a, b in piece.segments():
            if tp.is_boundary_face[f]:
                out.append(("bdy", f, a, b))
            else:
                out.append(("seg", f, a, b))
        if not piece.closed:
            out.append(("arc", piece.sides[-1], piece.sides[0]))
    return out


def _map_point(dec: Decomposition, tp_from, tp_to, p: int, f: int, x):
    """Image of a segment endpoint under the pairing of interior face ``f``.

    Arc endpoints carry no position, so they all map to the same marker.
    """
    if isinstance(x, tuple):
        return ARC_END
    fi = tp_from.faces[f][1]
    key = tp_from.sides[x]
    q, fj, vm = dec.glue(p, fi)
    if key[0] == "B":
        return tp_to.side_id[("B", fj, vm[key[2]])]
    _, e2 = dec.edge_image(p, fi, key[1])
    return tp_to.side_id[("I", e2)]


def glue_surface(surface: Surface):
    """Return (pairs, vertex classes) or raise :class:`GaussBonnetError`."""
    dec, tps = surface.dec, surface.tps
    polys = [_polygon(tps[d.poly], d) for d in surface.disks]
    segs = {}
    for i, (d, poly) in enumerate(zip(surface.disks, polys)):
        for j, side in enumerate(poly):
            if side[0] == "seg":
                a, b = (ARC_END if isinstance(x, tuple) else x for x in side[2:])
                segs[(i, j)] = (d.poly, side[1], a, b)
    pairs = surface.pairs
    if pairs is None:
        index = defaultdict(list)
        for key, (p, f, a, b) in segs.items():
            index[(p, f, frozenset((a, b)))].append(key)
        pairs, taken = [], set()
        for key, (p, f, a, b) in sorted(segs.items()):
            if key in taken:
                continue
            fi = tps[p].faces[f][1]
            q, fj, _ = dec.glue(p, fi)
            g = tps[q].face_id[("F", fj)]
            a2 = _map_point(dec, tps[p], tps[q], p, f, a)
            b2 = _map_point(dec, tps[p], tps[q], p, f, b)
            cands = [k for k in index.get((q, g, frozenset((a2, b2))), []) if k not in taken and k != key]
            if not cands:
                raise GaussBonnetError(f"segment {key} in face {tps[p].faces[f]} has no partner")
            taken.update((key, cands[0]))
            pairs.append((key, cands[0]))
    # vertices of each polygon: vertex j sits at the start of side j
    uf = _UnionFind([(i, j) for i, poly in enumerate(polys) for j in range(len(poly))])
    seen = set()
    for k1, k2 in pairs:
        for k in (k1, k2):
            if k not in segs:
                raise GaussBonnetError(f"{k} is not an interior segment")
            if k in seen:
                raise GaussBonnetError(f"segment {k} is glued twice")
            seen.add(k)
        (p, f, a, b), (q, g, c, d) = segs[k1], segs[k2]
        fi = tps[p].faces[f][1]
        q2, fj, _ = dec.glue(p, fi)
        if (q2, tps[q].faces[g]) != (q, ("F", fj)):
            raise GaussBonnetError(f"segments {k1} and {k2} lie in faces that are not glued")
        a2 = _map_point(dec, tps[p], tps[q], p, f, a)
        b2 = _map_point(dec, tps[p], tps[q], p, f, b)
        i1, j1 = k1
        i2, j2 = k2
        n1, n2 = len(polys[i1]), len(polys[i2])
        if (a2, b2) == (c, d):
            uf.union((i1, j1), (i2, j2))
            uf.union((i1, (j1 + 1) % n1), (i2, (j2 + 1) % n2))
        elif (a2, b2) == (d, c):
            uf.union((i1, j1), (i2, (j2 + 1) % n2))
            uf.union((i1, (j1 + 1) % n1), (i2, j2))
        else:
            raise GaussBonnetError(f"segments {k1} and {k2} do not match under the face pairing")
    missing = sorted(set(segs) - seen)
    if missing:
        raise GaussBonnetError(f"interior segments left unglued: {missing}")
    classes = {uf.find(v) for v in uf.parent}
    return pairs, polys, len(classes)


@dataclass(frozen=True)
class GaussBonnetReport:
    label: str
    area: int  # pi/6 units
    euler: int
    arcs: int
    holds: bool

    @property
    def rhs(self) -> int:
        return -2 * PI * self.euler + 2 * PI * self.arcs

    def to_json(self) -> dict:
        return {
            "surface": self.label,
            "area_pi_over_6": self.area,
            "chi": self.euler,
            "arcs": self.arcs,
            "rhs_pi_over_6": self.rhs,
            "holds": self.holds,
        }


def gauss_bonnet(surface: Surface) -> GaussBonnetReport:
    """Check a(F) = -2 pi chi(F) + 2 pi Length(dF - dM) on a glued surface."""
    tps = surface.tps
    for d in surface.disks:
        if not is_admissible(tps[d.poly], d):
            raise GaussBonnetError("surface contains a disk that is not admissible")
    pairs, polys, V = glue_surface(surface)
    free = sum(1 for poly in polys for s in poly if s[0] != "seg")
    E = len(pairs) + free
    F = len(polys)
    chi = V - E + F
    area = sum(comb_area(tps[d.poly], d) for d in surface.disks)
    arcs = sum(d.arcs for d in surface.disks)
    return GaussBonnetReport(surface.label, area, chi, arcs, area == -2 * PI * chi + 2 * PI * arcs)


# ---- standard surfaces --------------------------------------------------


def vertex_link(tp: TruncatedPolyhedron, v) -> AdmissibleDisk:
    poly = tp.poly
    ring = poly.vertex_faces[v]
    corners = poly.vertex_corners[v]
    sides, faces = [], []
    for k, fi in enumerate(ring):
        # enter face k across corner k-1, leave across corner k
        sides.append(tp.side_id[("I", corners[k - 1])])
        faces.append(tp.face_id[("F", fi)])
    return AdmissibleDisk(tp.index, (SurfaceCurve(tuple(sides), tuple(faces)),))


def boundary_bigon(tp: TruncatedPolyhedron, e) -> AdmissibleDisk:
    poly = tp.poly
    u, w = poly.edge_ends[e]
    f, g = poly.edge_faces[e]
    sides = [("B", f, u), ("B", f, w), ("B", g, w), ("B", g, u)]
    faces = [("F", f), ("V", w), ("F", g), ("V", u)]
    return AdmissibleDisk(tp.index, (curve_from_keys(tp, sides, faces),))


def face_parallel_triangle(tp: TruncatedPolyhedron, fi: int) -> AdmissibleDisk:
    """The ideal triangle running just outside the triangular face ``fi``."""
    poly = tp.poly
    f = poly.faces[fi]
    if f.degree != 3:
        raise NormalSurfaceError("only triangular faces have a parallel ideal triangle")
    sides, faces = [], []
    for i in range(3):
        e = f.edges[i]
        h = next(x for x in poly.edge_faces[e] if x != fi)
        v0, v1 = f.vertices[i], f.vertices[(i + 1) % 3]
        sides += [("B", h, v0), ("B", h, v1)]
        faces += [("F", h), ("V", v1)]
    return AdmissibleDisk(tp.index, (curve_from_keys(tp, sides, faces),))


def arc_half_disk(tp: TruncatedPolyhedron, fi: int) -> AdmissibleDisk:
    """A disk whose boundary is one interior arc and one chord of face ``fi``."""
    piece = SurfaceCurve((("pt", "a"), ("pt", "b")), (tp.face_id[("F", fi)],), closed=False)
    return AdmissibleDisk(tp.index, (piece,))


def arc_strip(tp: TruncatedPolyhedron, v) -> AdmissibleDisk:
    """Interior arc closed up across the boundary face of ``v`` between its white faces."""
    ring = tp.poly.vertex_faces[v]
    f, g = ring[1], ring[3]
    sides = [("pt", "a"), tp.side_id[("B", f, v)], tp.side_id[("B", g, v)], ("pt", "b")]
    faces = [tp.face_id[("F", f)], tp.face_id[("V", v)], tp.face_id[("F", g)]]
    return AdmissibleDisk(tp.index, (SurfaceCurve(tuple(sides), tuple(faces), closed=False),))


def vertex_link_torus(dec: Decomposition, cusp) -> Surface:
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    disks = [vertex_link(tps[t.poly], t.vertex) for t in cusp.tiles]
    s = Surface(dec, disks, label=f"vertex links of cusp {cusp.index}")
    s.__dict__["tps"] = tps
    return s


def bigon_annulus(dec: Decomposition, edge_class) -> Surface:
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    disks = [boundary_bigon(tps[p], e) for p, e in edge_class]
    s = Surface(dec, disks, label=f"bigon annulus around {edge_class[0]}")
    s.__dict__["tps"] = tps
    return s


def triangle_pair(dec: Decomposition, fi: int) -> Surface:
    """Face-parallel triangles on both sides of face ``fi`` glued along white faces."""
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    disks = [face_parallel_triangle(tps[0], fi), face_parallel_triangle(tps[1], fi)]
    s = Surface(dec, disks, label=f"triangle pair parallel to face {fi}")
    s.__dict__["tps"] = tps
    return s


def half_disk_pair(dec: Decomposition, fi: int) -> Surface:
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    disks = [arc_half_disk(tps[0], fi), arc_half_disk(tps[1], fi)]
    s = Surface(dec, disks, label=f"arc half-disks on face {fi}")
    s.__dict__["tps"] = tps
    return s


def strip_pair(dec: Decomposition, v) -> Surface:
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    disks = [arc_strip(tps[0], v), arc_strip(tps[1], v)]
    s = Surface(dec, disks, label=f"arc strips across {v}")
    s.__dict__["tps"] = tps
    return s


def standard_surfaces(dec: Decomposition) -> list[Surface]:
    """Vertex-link tori of every cusp plus one of each hand-built surface."""
    shaded = [f.index for f in dec.polys[0].faces if f.color == SHADED]
    white = [f.index for f in dec.polys[0].faces if f.color == WHITE]
    out = [vertex_link_torus(dec, c) for c in cusp_tori(dec)]
    out.append(bigon_annulus(dec, dec.edge_classes[0]))
    out.append(triangle_pair(dec, shaded[0]))
    out.append(half_disk_pair(dec, white[0]))
    out.append(strip_pair(dec, ("C", 0)))
    return out


def faulty_surface(dec: Decomposition) -> Surface:
    """A triangle glued to a triangle parallel to a different face: must be rejected."""
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    shaded = [f.index for f in dec.polys[0].faces if f.color == SHADED]
    d1 = face_parallel_triangle(tps[0], shaded[0])
    d2 = face_parallel_triangle(tps[1], shaded[1])
    p1 = _polygon(tps[0], d1)
    p2 = _polygon(tps[1], d2)
    j1 = next(j for j, s in enumerate(p1) if s[0] == "seg")
    j2 = next(j for j, s in enumerate(p2) if s[0] == "seg")
    s = Surface(dec, [d1, d2], pairs=[((0, j1), (1, j2))], label="faulty gluing fixture")
    s.__dict__["tps"] = tps
    return s


# ---------------------------------------------------------------------------
# the area-positivity oracle


@dataclass
class OracleReport:
    polyhedron: str
    curves: int
    arc_disks: int
    complete: bool
    seconds: float
    counts_by_class: dict
    failures: list = field(default_factory=list)
    weight_cutoff: Optional[int] = None
    pruned: int = 0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "polyhedron": self.polyhedron,
            "curves": self.curves,
            "arc_disks": self.arc_disks,
            "complete": self.complete,
            "weight_cutoff": self.weight_cutoff,
            "pruned_branches": self.pruned,
            "classes": dict(sorted(self.counts_by_class.items())),
            "failures": self.failures[:20],
            "passed": self.passed,
        }


WEIGHT_CUTOFF = 4


def area_oracle(dec: Decomposition, poly: int = 0, exhaustive: bool = False,
                arc_len: int = 3, max_len: Optional[int] = None) -> OracleReport:
    """Enumerate normal curves and check area positivity and relative-length bounds.

    By default the search skips curves of weight above 4: such a curve
    has 3E + 6B - 12 >= 3 (area at least pi/2) and, when B >= 1, relative
    length above pi/2, so nothing in it can fail.  ``exhaustive`` lists
    every normal curve instead.
    """
    tp = TruncatedPolyhedron(dec.polys[poly], poly)
    cutoff = None if exhaustive else WEIGHT_CUTOFF
    en = enumerate_normal_curves(tp, max_len=max_len, max_weight=cutoff)
    failures = []
    by_class = defaultdict(int)
    vertex_sets, edge_sets, _ = tp.node_sets()
    for c in en.curves:
        d = AdmissibleDisk(poly, (c,))
        a = comb_area(tp, d)
        cls = classify_disk(tp, d)
        by_class[cls] += 1
        E, B, _ = counts(tp, d)
        if a < 0:
            failures.append(("negative area", c.sides))
        if (a == 0) != (cls in (VERTEX_LINK, BIGON)):
            failures.append(("zero area mismatch", cls, a, c.sides))
        if B >= 1 and cls not in (BIGON, TRIANGLE_S, TRIANGLE_W, TRIANGLE_N):
            if relative_length(tp, d) < Fraction(PI, 2):
                failures.append(("relative length below pi/2", cls, a, B, c.sides))
        if (E, B) == (0, 3):
            if cls == GENERIC:
                failures.append(("unclassified ideal triangle", c.sides))
            if len(set(c.faces)) != 6:
                failures.append(("ideal triangle revisits a face", c.sides))
        if B == 0 and E < 4:
            failures.append(("angle sum below 2 pi", c.sides))
        if B == 0 and E == 4 and cls != VERTEX_LINK:
            failures.append(("4-edge curve not around a vertex", c.sides))
    arc_disks = enumerate_arc_disks(tp, arc_len)
    for d in arc_disks:
        if not is_admissible(tp, d):
            continue
        a = comb_area(tp, d)
        by_class["with-arc"] += 1
        if a <= 0:
            failures.append(("arc disk with non-positive area", d.pieces[0].sides))
        _, B, _ = counts(tp, d)
        if B and relative_length(tp, d) < Fraction(PI, 2):
            failures.append(("arc disk relative length below pi/2", d.pieces[0].sides))
    failures += glue_type_violations(dec, en.curves, poly)
    return OracleReport(dec.polys[poly].name, len(en.curves), len(arc_disks), en.complete,
                        en.seconds, dict(by_class), failures, cutoff, en.pruned)


def glue_type_violations(dec: Decomposition, curves: Iterable[SurfaceCurve], poly: int = 0) -> list:
    """Type-N triangles whose segments match a bigon or type-S triangle across a face."""
    tps = [TruncatedPolyhedron(p, i) for i, p in enumerate(dec.polys)]
    tp = tps[poly]
    classified = [(c, classify_disk(tp, AdmissibleDisk(poly, (c,)))) for c in curves]
    # the other polyhedron is the mirror image: the same side labels give its curves
    blockers = defaultdict(set)
    for q in range(len(tps)):
        for c, cls in classified:
            if cls not in (BIGON, TRIANGLE_S):
                continue
            for f, a, b in c.segments():
                if tp.is_boundary_face[f]:
                    continue
                fk, ak, bk = tp.faces[f], tp.sides[a], tp.sides[b]
                blockers[(q, fk, frozenset((ak, bk)))].add(cls)
    out = []
    for c, cls in classified:
        if cls != TRIANGLE_N:
            continue
        for f, a, b in c.segments():
            if tp.is_boundary_face[f]:
                continue
            fi = tp.faces[f][1]
            q, fj, _ = dec.glue(poly, fi)
            a2 = _map_point(dec, tp, tps[q], poly, f, a)
            b2 = _map_point(dec, tp, tps[q], poly, f, b)
            key = (q, ("F", fj), frozenset((tps[q].sides[a2], tps[q].sides[b2])))
            if blockers.get(key):
                out.append(("type-N triangle glues to " + "/".join(sorted(blockers[key])), c.sides))
    return out


# ---------------------------------------------------------------------------
# angled-polyhedron check


@dataclass
class AngledReport:
    edge_classes: int
    edge_condition: bool
    curves_checked: int
    complete: bool
    max_len: Optional[int]
    violations: list
    sample: list  # (sides, external angle sum) for a few curves

    @property
    def passed(self) -> bool:
        return self.edge_condition and not self.violations

    def to_json(self) -> dict:
        return {
            "edge_classes": self.edge_classes,
            "edge_condition": self.edge_condition,
            "curves_checked": self.curves_checked,
            "complete": self.complete,
            "max_len": self.max_len,
            "violations": self.violations[:20],
            "passed": self.passed,
        }


def dual_curves(poly: Polyhedron, max_len: Optional[int] = None):
    """Normal curves meeting only interior edges, as cyclic (face, edge) walks."""
    tp = TruncatedPolyhedron(poly, 0)
    en = enumerate_normal_curves(tp, max_len=max_len, only_interior=True)
    return tp, en


def verify_angled(dec: Decomposition, max_curve_len: Optional[int] = None) -> AngledReport:
    from .polyhedra import FULL_TURN, RIGHT_ANGLE

    problems = dec.check_gluing()
    edge_ok = not problems
    violations = list(problems)
    total = 0
    complete = True
    sample = []
    for poly in dec.polys:
        tp, en = dual_curves(poly, max_curve_len)
        complete &= en.complete
        for c in en.curves:
            total += 1
            eps = RIGHT_ANGLE * len(c.sides)
            if len(sample) < 5:
                sample.append(([tp.sides[s] for s in c.sides], eps))
            if eps < FULL_TURN:
                violations.append((poly.name, "external angle sum below 2 pi", [tp.sides[s] for s in c.sides]))
            elif eps == FULL_TURN and encircled_vertex(tp, c) is None:
                violations.append((poly.name, "sum 2 pi without encircling a vertex", [tp.sides[s] for s in c.sides]))
    return AngledReport(len(dec.edge_classes), edge_ok, total, complete, max_curve_len, violations, sample)


# ---------------------------------------------------------------------------
# cusp arcs and length bounds

_STEP = {"E": (1, 0), "N": (0, 1), "W": (-1, 0), "S": (0, -1)}
_OPP = {"E": "W", "W": "E", "N": "S", "S": "N"}


@dataclass(frozen=True)
class ProgressiveBound:
    kind: str  # "a", "b" or "c"
    bound: int  # pi/6 units
    segments: tuple[str, ...]


def segment_type(entry: str, exit: str, cusp_kind: str) -> str:
    """Longitudinal, meridional or diagonal for a segment entering/leaving a tile.

    Shaded sides of a tile face E/W, white sides N/S.
    """
    if entry == exit:
        raise NormalSurfaceError("segment has both endpoints on the same side")
    if _OPP[entry] != exit:
        return "diagonal"
    horizontal = entry in "EW"  # crosses shaded sides: a w step
    if cusp_kind == "crossing-circle":
        return "meridional" if horizontal else "longitudinal"
    return "longitudinal" if horizontal else "meridional"


def progressive_arc_bound(cusp_kind: str, entry: str, exits: Sequence[str]) -> ProgressiveBound:
    """Classify a cusp arc given its entry side and the exit side of each segment.

    On a crossing-circle cusp a progressive arc climbs from one white line
    to the next (an ``s`` step); on a strand cusp it crosses from one
    shaded line to the next (a ``w`` step).
    """
    if not exits:
        raise NormalSurfaceError("empty arc")
    step_dirs = "NS" if cusp_kind == "crossing-circle" else "EW"
    if entry not in step_dirs:
        raise NormalSurfaceError("not progressive: the arc must start on a strip boundary")
    forward = _OPP[entry]
    cur = entry
    types = []
    for i, ex in enumerate(exits):
        types.append(segment_type(cur, ex, cusp_kind))
        last = i == len(exits) - 1
        if ex in step_dirs:
            if ex != forward or not last:
                raise NormalSurfaceError("not progressive: the arc leaves its strip")
        elif last:
            raise NormalSurfaceError("not progressive: the arc ends inside its strip")
        cur = _OPP[ex]
    if len(types) == 1:
        kind = "a"
    elif len(types) == 2:
        kind = "b"
    else:
        kind = "c"
    return ProgressiveBound(kind, PI // 3, tuple(types))


def comb_length_lower_bound(cusp, coords):
    """``n pi/3`` for a nontrivial surgery curve; strict on crossing circles.

    ``n`` is the number of progressive arcs the curve must contain: one
    per crossing of the region for a crossing circle, one per region
    visited (times ``|q|``) for a knot strand.
    """
    from .slopes import SlopeError, combinatorial_length_bound

    if coords is None or not coords.nontrivial:
        raise NormalSurfaceError("trivial slope has no length bound")
    if coords.cusp != cusp.index:
        raise NormalSurfaceError("coordinates belong to a different cusp")
    try:
        return combinatorial_length_bound(coords)
    except SlopeError as e:
        raise NormalSurfaceError(str(e)) from None


def oracle_json(reports) -> str:
    return json.dumps([r.to_json() for r in reports], sort_keys=True)
