"""Right-angled ideal polyhedra for augmented link complements.

Collapsing every twist region to a point turns the diagram graph into a
4-valent graph G' with one vertex per region.  The top polyhedron P1 has

* one ideal vertex per crossing circle (``("C", region)``) and one per
  edge of G' (``("A", edge label)``), the latter standing for the strand
  of the link between two crossing disks;
* two shaded triangles per region, the "bowtie" ``W = [C, p0, p1]`` and
  ``E = [C, p2, p3]`` where ``p0..p3`` are the arc vertices at the
  region's ports in counterclockwise order;
* one white face per face of G'.

P2 is the mirror image.  White faces are glued P1 -> P2 by the identity.
The two shaded triangles of a region are glued to each other inside each
polyhedron (``p0 -> p3``, ``p1 -> p2``) when the region has an even number
of crossings; an odd region keeps a half twist and glues W of P1 to E of
P2 and W of P2 to E of P1 with the punctures swapped.

Edges carry explicit keys ``(region, "W"|"E", "N"|"mid"|"S")`` since two
vertices may be joined by more than one edge.

Cusp tori are assembled from the truncated vertices: each boundary
rectangle has its shaded sides parallel to ``s`` and white sides parallel
to ``w``, so crossing a shaded side is a ``w`` step and crossing a white
side an ``s`` step.  Closed loops in the tile gluing give the period
lattice.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Optional

from .augment import AugmentedLink
from .diagram import _UnionFind

SHADED = "shaded"
WHITE = "white"
UNKNOWN = "UNKNOWN"

# angle units: multiples of pi/6
RIGHT_ANGLE = 3
FULL_TURN = 12


class PolyhedronError(RuntimeError):
    """An internal consistency check on the decomposition failed."""


@dataclass(frozen=True)
class PolyFace:
    index: int
    color: str
    key: tuple
    vertices: tuple[tuple, ...]
    edges: tuple[tuple, ...]  # edges[i] joins vertices[i] and vertices[i+1]

    @property
    def degree(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Polyhedron:
    name: str
    faces: tuple[PolyFace, ...]
    edge_ends: dict = field(compare=False, hash=False)

    @cached_property
    def vertices(self) -> list[tuple]:
        return sorted({v for f in self.faces for v in f.vertices})

    @cached_property
    def edges(self) -> list[tuple]:
        return sorted(self.edge_ends)

    @cached_property
    def face_by_key(self) -> dict:
        return {f.key: f for f in self.faces}

    @cached_property
    def edge_faces(self) -> dict[tuple, list[int]]:
        out = defaultdict(list)
        for f in self.faces:
            for e in f.edges:
                out[e].append(f.index)
        return dict(out)

    @cached_property
    def vertex_faces(self) -> dict[tuple, list[int]]:
        """Faces around each vertex in cyclic order, starting from a shaded face."""
        incident = defaultdict(list)
        for f in self.faces:
            for i, v in enumerate(f.vertices):
                # (face, edge into v, edge out of v)
                incident[v].append((f.index, f.edges[i - 1], f.edges[i]))
        out = {}
        for v, items in incident.items():
            by_in = {e_in: (fi, e_out) for fi, e_in, e_out in items}
            start = min(fi for fi, _, _ in items if self.faces[fi].color == SHADED)
            cycle = [start]
            cur_out = next(e_out for fi, _, e_out in items if fi == start)
            while True:
                fi, e_out = by_in[cur_out]
                if fi == start:
                    break
                cycle.append(fi)
                cur_out = e_out
            out[v] = cycle
        return out

    @cached_property
    def vertex_corners(self) -> dict[tuple, list[tuple]]:
        """Edges around each vertex; corner ``k`` sits between faces ``k`` and ``k+1``."""
        out = {}
        for v, cycle in self.vertex_faces.items():
            corners = []
            for fi in cycle:
                f = self.faces[fi]
                i = f.vertices.index(v)
                corners.append(f.edges[i])
            out[v] = corners
        return out

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edge_ends) + len(self.faces)

    def mirror(self, name: str) -> "Polyhedron":
        faces = []
        for f in self.faces:
            n = f.degree
            verts = (f.vertices[0],) + tuple(f.vertices[n - i] for i in range(1, n))
            edges = tuple(f.edges[(n - 1 - i) % n] for i in range(n))
            faces.append(PolyFace(f.index, f.color, f.key, verts, edges))
        return Polyhedron(name, tuple(faces), dict(self.edge_ends))

    def check(self) -> list[str]:
        """Structural self-checks; returns a list of problems (empty when sound)."""
        problems = []
        seen = defaultdict(list)
        for f in self.faces:
            if f.degree < 3:
                problems.append(f"face {f.key} has only {f.degree} sides")
            if f.color == SHADED and f.degree != 3:
                problems.append(f"shaded face {f.key} is not a triangle")
            if len(set(f.vertices)) != f.degree:
                problems.append(f"face {f.key} repeats a vertex")
            for i, e in enumerate(f.edges):
                u, w = f.vertices[i], f.vertices[(i + 1) % f.degree]
                if {u, w} != set(self.edge_ends[e]):
                    problems.append(f"edge {e} does not join {u} and {w}")
                seen[e].append((u, w, f.color))
        for e, uses in seen.items():
            if len(uses) != 2:
                problems.append(f"edge {e} lies on {len(uses)} faces")
                continue
            (a, b, c1), (x, y, c2) = uses
            if (a, b) != (y, x):
                problems.append(f"edge {e} is not traversed in opposite directions")
            if c1 == c2:
                problems.append(f"edge {e} separates two faces of the same color")
        if self.euler_characteristic() != 2:
            problems.append(f"Euler characteristic {self.euler_characteristic()} != 2")
        if not problems:
            for v, cycle in self.vertex_faces.items():
                if len(cycle) != 4:
                    problems.append(f"vertex {v} has valence {len(cycle)}")
                colors = [self.faces[i].color for i in cycle]
                if any(colors[i] == colors[(i + 1) % len(colors)] for i in range(len(colors))):
                    problems.append(f"colors do not alternate around {v}")
        return problems

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "faces": [
                {
                    "index": f.index,
                    "color": f.color,
                    "key": list(f.key),
                    "vertices": [list(v) for v in f.vertices],
                    "edges": [list(e) for e in f.edges],
                }
                for f in self.faces
            ],
        }


@dataclass(frozen=True)
class FacePairing:
    source: tuple[int, int]  # (polyhedron index, face index)
    target: tuple[int, int]
    vertex_map: tuple[tuple[tuple, tuple], ...]
    kind: str  # "white", "shaded", "shaded-twist"

    def vmap(self) -> dict:
        return dict(self.vertex_map)


@dataclass
class Decomposition:
    """P1, P2 and the face pairings of an augmented link complement."""

    link: AugmentedLink
    polys: tuple[Polyhedron, Polyhedron]
    pairings: list[FacePairing]
    vertex_info: dict  # vertex -> ("circle", region) | ("strand", component)

    @cached_property
    def partner(self) -> dict[tuple[int, int], tuple[FacePairing, bool]]:
        """Face -> (pairing, forward?) for every face of P1 and P2."""
        out = {}
        for g in self.pairings:
            for key, fwd in ((g.source, True), (g.target, False)):
                if key in out:
                    raise PolyhedronError(f"face {key} is paired twice")
                out[key] = (g, fwd)
        for p, poly in enumerate(self.polys):
            for f in poly.faces:
                if (p, f.index) not in out:
                    raise PolyhedronError(f"face {f.key} of {poly.name} is unpaired")
        return out

    def glue(self, p: int, fi: int) -> tuple[int, int, dict]:
        """Target face of ``(p, fi)`` and the vertex map into it."""
        g, fwd = self.partner[(p, fi)]
        vm = g.vmap()
        if fwd:
            return g.target[0], g.target[1], vm
        return g.source[0], g.source[1], {b: a for a, b in vm.items()}

    def edge_image(self, p: int, fi: int, e: tuple) -> tuple[int, tuple]:
        """Where edge ``e`` of face ``fi`` of polyhedron ``p`` lands under the pairing."""
        q, fj, vm = self.glue(p, fi)
        f = self.polys[p].faces[fi]
        i = f.edges.index(e)
        u, w = vm[f.vertices[i]], vm[f.vertices[(i + 1) % f.degree]]
        g = self.polys[q].faces[fj]
        for k, e2 in enumerate(g.edges):
            if {g.vertices[k], g.vertices[(k + 1) % g.degree]} == {u, w}:
                return q, e2
        raise PolyhedronError(f"pairing of {f.key} does not carry edge {e}")

    @cached_property
    def edge_classes(self) -> list[list[tuple[int, tuple]]]:
        members = [(p, e) for p, poly in enumerate(self.polys) for e in poly.edges]
        uf = _UnionFind(members)
        for p, poly in enumerate(self.polys):
            for f in poly.faces:
                for e in f.edges:
                    uf.union((p, e), self.edge_image(p, f.index, e))
        groups = defaultdict(list)
        for m in members:
            groups[uf.find(m)].append(m)
        return sorted(sorted(g) for g in groups.values())

    def check_gluing(self) -> list[str]:
        problems = []
        for g in self.pairings:
            (p, fi), (q, fj) = g.source, g.target
            f, h = self.polys[p].faces[fi], self.polys[q].faces[fj]
            vm = g.vmap()
            if f.color != h.color:
                problems.append(f"pairing {f.key}->{h.key} mixes colors")
            if sorted(vm.values()) != sorted(h.vertices):
                problems.append(f"pairing {f.key}->{h.key} is not onto")
                continue
            # orientation reversing: the image of f's cycle runs backwards around h
            img = [vm[v] for v in f.vertices]
            n = len(img)
            start = h.vertices.index(img[0])
            back = [h.vertices[(start - i) % n] for i in range(n)]
            if img != back:
                problems.append(f"pairing {f.key}->{h.key} does not reverse orientation")
        for cls in self.edge_classes:
            if len(cls) != 4:
                problems.append(f"edge class {cls} has {len(cls)} members")
            colors = []
            for p, e in cls:
                colors += [self.polys[p].faces[i].color for i in self.polys[p].edge_faces[e]]
            if colors.count(SHADED) != 4 or colors.count(WHITE) != 4:
                problems.append(f"edge class {cls} does not meet two shaded and two white sides")
            if RIGHT_ANGLE * len(cls) != FULL_TURN:
                problems.append(f"angle sum around {cls} is {len(cls)} right angles")
        return problems

    def isomorphic_halves(self) -> bool:
        """P1 and P2 agree as colored complexes under the white-face identification."""
        p1, p2 = self.polys
        vm = {}
        for g in self.pairings:
            if g.kind != "white":
                continue
            for a, b in g.vertex_map:
                if vm.setdefault(a, b) != b:
                    return False
        if sorted(vm) != p1.vertices or sorted(vm.values()) != p2.vertices:
            return False

        def cyc(seq):
            rots = [tuple(seq[i:] + seq[:i]) for i in range(len(seq))]
            rev = list(reversed(seq))
            rots += [tuple(rev[i:] + rev[:i]) for i in range(len(rev))]
            return min(rots)

        image = sorted((f.color, cyc([vm[v] for v in f.vertices])) for f in p1.faces)
        target = sorted((f.color, cyc(list(f.vertices))) for f in p2.faces)
        return image == target

    def to_json(self) -> dict:
        return {
            "polyhedra": [p.to_json() for p in self.polys],
            "pairings": [
                {
                    "source": list(g.source),
                    "target": list(g.target),
                    "kind": g.kind,
                    "vertex_map": [[list(a), list(b)] for a, b in g.vertex_map],
                }
                for g in self.pairings
            ],
            "edge_classes": [[[p, list(e)] for p, e in cls] for cls in self.edge_classes],
        }


def _region_graph(a: AugmentedLink):
    """Ports of G': label -> list of (region, port), and (region, port) -> label."""
    d = a.base
    port_label = {}
    label_ports = defaultdict(list)
    for r in a.regions:
        for k, (c, s) in enumerate(r.ports):
            lab = d.crossings[c][s]
            port_label[(r.index, k)] = lab
            label_ports[lab].append((r.index, k))
    for lab, ends in label_ports.items():
        if len(ends) != 2:
            raise PolyhedronError(f"edge {lab} meets {len(ends)} region ports")
    return port_label, dict(label_ports)


def _trace_white_faces(a: AugmentedLink, port_label, label_ports):
    seen = set()
    faces = []
    for start in sorted(port_label):
        if start in seen:
            continue
        corners = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            corners.append(cur)
            r, k = cur
            out = (r, (k - 1) % 4)
            lab = port_label[out]
            x, y = label_ports[lab]
            cur = y if x == out else x
        faces.append(corners)
    return faces


def build_p1(a: AugmentedLink) -> tuple[Polyhedron, dict]:
    port_label, label_ports = _region_graph(a)
    d = a.base

    def C(r):
        return ("C", r)

    def A(r, k):
        return ("A", port_label[(r, k)])

    faces = []
    edge_ends = {}
    for r in a.regions:
        i = r.index
        for side, (k0, k1), names in (("W", (0, 1), ("N", "mid", "S")), ("E", (2, 3), ("S", "mid", "N"))):
            verts = (C(i), A(i, k0), A(i, k1))
            edges = tuple((i, side, n) for n in names)
            for j, e in enumerate(edges):
                edge_ends[e] = (verts[j], verts[(j + 1) % 3])
            faces.append(PolyFace(len(faces), SHADED, ("S", i, side), verts, edges))
    for corners in _trace_white_faces(a, port_label, label_ports):
        verts, edges = [], []
        for r, k in corners:
            verts.append(A(r, k))
            if k == 0:
                verts.append(C(r))
                edges += [(r, "W", "N"), (r, "E", "N")]
            elif k == 2:
                verts.append(C(r))
                edges += [(r, "E", "S"), (r, "W", "S")]
            elif k == 1:
                edges.append((r, "W", "mid"))
            else:
                edges.append((r, "E", "mid"))
        key = ("F",) + tuple(sorted(port_label[c] for c in corners))
        faces.append(PolyFace(len(faces), WHITE, key, tuple(verts), tuple(edges)))
    info = {C(r.index): ("circle", r.index) for r in a.regions}
    for lab in label_ports:
        info[("A", lab)] = ("strand", d.edge_component[lab])
    return Polyhedron("P1", tuple(faces), edge_ends), info


def decompose(a: AugmentedLink) -> Decomposition:
    p1, info = build_p1(a)
    p2 = p1.mirror("P2")
    port_label, _ = _region_graph(a)
    pairings = []
    for f in p1.faces:
        if f.color == WHITE:
            pairings.append(
                FacePairing((0, f.index), (1, f.index), tuple((v, v) for v in f.vertices), "white")
            )
    for circle, r in zip(a.circles, a.regions):
        i = r.index
        cv = ("C", i)
        p = [("A", port_label[(i, k)]) for k in range(4)]
        w = p1.face_by_key[("S", i, "W")].index
        e = p1.face_by_key[("S", i, "E")].index
        if circle.half_twist == 0:
            vm = ((cv, cv), (p[0], p[3]), (p[1], p[2]))
            pairings.append(FacePairing((0, w), (0, e), vm, "shaded"))
            pairings.append(FacePairing((1, w), (1, e), vm, "shaded"))
        else:
            vm = ((cv, cv), (p[0], p[2]), (p[1], p[3]))
            pairings.append(FacePairing((0, w), (1, e), vm, "shaded-twist"))
            pairings.append(FacePairing((1, w), (0, e), vm, "shaded-twist"))
    dec = Decomposition(a, (p1, p2), pairings, info)
    problems = p1.check() + p2.check() + dec.check_gluing()
    if problems:
        raise PolyhedronError("; ".join(problems))
    return dec


# ---------------------------------------------------------------------------
# cusp tori

_DIRS = ((1, 0), (0, 1), (-1, 0), (0, -1))  # local side k of a tile


@dataclass(frozen=True)
class Tile:
    poly: int
    vertex: tuple


@dataclass(frozen=True)
class CuspTorus:
    index: int
    kind: str  # "crossing-circle" or "knot-strand"
    owner: int  # region index or link component
    tiles: tuple[Tile, ...]
    placement: tuple[tuple[Tile, tuple[int, int], tuple[int, int]], ...]
    lattice: tuple[tuple[int, int], tuple[int, int]]  # reduced basis (w, s) coordinates
    meridian: tuple[int, int]
    longitude: tuple  # (w, s) with s possibly UNKNOWN
    half_twist: int = 0
    lattice_longitude: Optional[tuple[int, int]] = None

    @property
    def num_tiles(self) -> int:
        return len(self.tiles)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "kind": self.kind,
            "owner": self.owner,
            "tiles": len(self.tiles),
            "meridian": {"w": self.meridian[0], "s": self.meridian[1]},
            "longitude": {"w": self.longitude[0], "s": self.longitude[1]},
            "lattice": [list(v) for v in self.lattice],
            "half_twist": self.half_twist,
        }


def reduce_lattice(vectors) -> tuple[tuple[int, int], tuple[int, int]]:
    """Hermite basis ``((a, b), (0, c))`` of the integer span of 2D vectors."""
    rows = [list(v) for v in vectors if v != (0, 0)]
    a = b = 0
    c = 0
    for x, y in rows:
        # fold (x, y) into the current basis (a, b), (0, c)
        if x != 0 or a != 0:
            g, u, v = _ext_gcd(a, x)
            na, nb = g, u * b + v * y
            # the combination killing the first coordinate
            if g:
                k = (a // g) * y - (x // g) * b
                c = gcd(c, k)
            a, b = na, nb
        else:
            c = gcd(c, y)
    if a < 0:
        a, b = -a, -b
    if c:
        b %= c
    return (a, b), (0, c)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def in_lattice(basis, v) -> bool:
    (a, b), (_, c) = basis
    x, y = v
    if a == 0:
        return x == 0 and (y % c == 0 if c else y == 0)
    if x % a:
        return False
    r = y - (x // a) * b
    return r % c == 0 if c else r == 0


def cusp_tori(dec: Decomposition) -> list[CuspTorus]:
    polys = dec.polys
    tiles = [Tile(p, v) for p, poly in enumerate(polys) for v in poly.vertices]
    done: set[Tile] = set()
    out = []
    for seed in tiles:
        if seed in done:
            continue
        place = {seed: ((0, 0), (1, 1))}
        periods = []
        queue = deque([seed])
        while queue:
            t = queue.popleft()
            (cx, cy), (ax, ay) = place[t]
            poly = polys[t.poly]
            faces = poly.vertex_faces[t.vertex]
            corners = poly.vertex_corners[t.vertex]
            for k, fi in enumerate(faces):
                q, fj, vm = dec.glue(t.poly, fi)
                nv = vm[t.vertex]
                nt = Tile(q, nv)
                nfaces = polys[q].vertex_faces[nv]
                nk = nfaces.index(fj)
                dx, dy = _DIRS[k]
                gdir = (ax * dx, ay * dy)
                ncenter = (cx + gdir[0], cy + gdir[1])
                # corner between sides k and k+1 of t, and its image
                _, img = dec.edge_image(t.poly, fi, corners[k])
                ncorners = polys[q].vertex_corners[nv]
                if ncorners[nk] == img:
                    nk2 = (nk + 1) % 4
                elif ncorners[(nk - 1) % 4] == img:
                    nk2 = (nk - 1) % 4
                else:
                    raise PolyhedronError("tile corners do not match across a gluing")
                # solve for the neighbour's frame
                ndx, ndy = _DIRS[nk]
                odx, ody = _DIRS[nk2]
                kx, ky = _DIRS[(k + 1) % 4]
                corner_global = (gdir[0] + ax * kx, gdir[1] + ay * ky)
                if k % 2 == 0:
                    nax = -gdir[0] // ndx
                    nay = (corner_global[1]) // ody if ody else None
                else:
                    nay = -gdir[1] // ndy
                    nax = (corner_global[0]) // odx if odx else None
                nframe = (nax, nay)
                if None in nframe:
                    raise PolyhedronError("tile sides do not alternate in color")
                if nt in place:
                    oc, of = place[nt]
                    if of != nframe:
                        raise PolyhedronError("cusp is not a torus (orientation-reversing loop)")
                    per = (ncenter[0] - oc[0], ncenter[1] - oc[1])
                    if per != (0, 0):
                        periods.append(per)
                else:
                    place[nt] = (ncenter, nframe)
                    queue.append(nt)
        done.update(place)
        basis = reduce_lattice(periods)
        det = basis[0][0] * basis[1][1]
        if det != len(place):
            raise PolyhedronError(
                f"cusp lattice has covolume {det} but {len(place)} tiles"
            )
        out.append(_name_cusp(dec, len(out), place, basis))
    out.sort(key=lambda c: (c.kind != "knot-strand", c.owner))
    return [CuspTorus(i, c.kind, c.owner, c.tiles, c.placement, c.lattice, c.meridian,
                      c.longitude, c.half_twist, c.lattice_longitude)
            for i, c in enumerate(out)]


def _name_cusp(dec: Decomposition, index: int, place: dict, basis) -> CuspTorus:
    tiles = tuple(sorted(place, key=lambda t: (t.poly, t.vertex)))
    placement = tuple((t, place[t][0], place[t][1]) for t in tiles)
    kinds = {dec.vertex_info[t.vertex] for t in tiles}
    if len(kinds) != 1:
        raise PolyhedronError(f"cusp tiles belong to several link components: {sorted(kinds)}")
    ((kind, owner),) = kinds
    if kind == "circle":
        circle = dec.link.circles[owner]
        sigma = circle.half_twist
        meridian = (1, sigma)
        longitude = (0, 2)
        for v in (meridian, longitude):
            if not in_lattice(basis, v):
                raise PolyhedronError(f"crossing circle {owner}: {v} is not a period")
        if abs(meridian[0] * longitude[1] - meridian[1] * longitude[0]) != len(tiles):
            raise PolyhedronError(f"crossing circle {owner}: meridian and longitude do not span")
        return CuspTorus(index, "crossing-circle", owner, tiles, placement, basis,
                         meridian, longitude, sigma)
    (a, b), (_, c) = basis
    if c != 2 or not in_lattice(basis, (0, 2)):
        raise PolyhedronError(f"strand cusp of component {owner}: meridian 2s is not primitive")
    return CuspTorus(index, "knot-strand", owner, tiles, placement, basis,
                     (0, 2), (a, UNKNOWN), 0, (a, b))


def cusp_json(cusps: list[CuspTorus]) -> str:
    return json.dumps([c.to_json() for c in cusps], sort_keys=True)
