"""Link diagrams as 4-valent plane graphs.

A crossing is stored as the four edge labels met when walking
counterclockwise around it, PD style: the under-strand occupies slots 0
and 2, the over-strand slots 1 and 3.  For diagrams read from a PD code,
slot 0 is additionally the incoming under-strand.

Faces are traced with the rule "arrive through slot s, leave through slot
s - 1", which keeps the face on the left.  The corner of crossing ``c``
between slots ``k`` and ``k + 1`` is called corner ``k`` and belongs to
exactly one face.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence


class DiagramError(ValueError):
    """Malformed or unusable diagram data."""


class SplitDiagramError(DiagramError):
    """The diagram graph is disconnected; primality is not defined here."""


class PreconditionError(DiagramError):
    """An operation was called on a diagram violating its hypotheses."""


@dataclass(frozen=True)
class Face:
    """A complementary region of the diagram graph.

    ``corners`` lists ``(crossing, k)`` pairs in traversal order, with the
    face occupying corner ``k`` of that crossing; ``edges`` lists the edge
    labels in the same order (edge ``i`` leaves corner ``i``).
    """

    index: int
    corners: tuple[tuple[int, int], ...]
    edges: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.edges)

    @property
    def crossings(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.corners)


@dataclass(frozen=True)
class TwistRegion:
    """A maximal chain of crossings joined end to end by bigons.

    ``ports`` are the four half-edges ``(crossing, slot)`` through which the
    region connects to the rest of the diagram, in counterclockwise order;
    ports 0,1 bound one end face and ports 2,3 the other.  ``handedness`` is
    +1 when the chain runs through corners 0/2 of its first crossing and -1
    when it runs through corners 1/3; a lone crossing is read along corners
    0/2 by convention.
    """

    index: int
    crossings: tuple[int, ...]
    handedness: int
    ports: tuple[tuple[int, int], ...]
    end_faces: tuple[int, ...]
    side_faces: tuple[int, ...]
    cyclic: bool = False

    @property
    def count(self) -> int:
        return len(self.crossings)

    @property
    def bigons(self) -> int:
        return self.count if self.cyclic else self.count - 1


@dataclass(frozen=True)
class ComponentStats:
    component: int
    visits: int  # twist regions passed, counted with multiplicity


@dataclass(frozen=True)
class PrimeWitness:
    kind: str  # "monogon" or "cut"
    edges: tuple[int, ...]
    faces: tuple[int, ...]
    sides: tuple[frozenset[int], ...] = ()


@dataclass(frozen=True)
class TwistWitness:
    crossings: tuple[int, int]
    faces: tuple[int, int]
    cut_edges: tuple[int, ...]
    sides: tuple[frozenset[int], frozenset[int]]
    suggestion: str = "a sequence of flypes may merge the two twist regions"


@dataclass(frozen=True)
class Verdict:
    value: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.value


@dataclass(frozen=True, eq=False)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    label: str = ""
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "crossings", tuple(tuple(int(x) for x in c) for c in self.crossings)
        )
        if self._check:
            self.validate()

    def __eq__(self, other):
        return isinstance(other, LinkDiagram) and self.crossings == other.crossings

    def __hash__(self):
        return hash(self.crossings)

    # -- basic structure -------------------------------------------------

    def validate(self) -> None:
        if not self.crossings:
            raise DiagramError("no crossings")
        for i, c in enumerate(self.crossings):
            if len(c) != 4:
                raise DiagramError(f"crossing {i} is not 4-valent: {c}")
        counts: dict[int, int] = defaultdict(int)
        for c in self.crossings:
            for e in c:
                counts[e] += 1
        bad = sorted(e for e, n in counts.items() if n != 2)
        if bad:
            raise DiagramError(f"edge labels must appear exactly twice; offending: {bad}")
        for comp in self.graph_components:
            cs = set(comp)
            v = len(cs)
            e = sum(1 for lab, ends in self.edge_ends.items() if ends[0][0] in cs)
            f = sum(1 for face in self.faces if face.corners[0][0] in cs)
            if v - e + f != 2:
                raise DiagramError(
                    f"rotation system is not planar (V - E + F = {v - e + f} on a component)"
                )

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def edge_ends(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        ends: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for c, labels in enumerate(self.crossings):
            for s, e in enumerate(labels):
                ends[e].append((c, s))
        return {e: (v[0], v[1]) for e, v in sorted(ends.items())}

    @property
    def edges(self) -> list[int]:
        return list(self.edge_ends)

    def opposite(self, c: int, s: int) -> tuple[int, int]:
        """The other end of the edge leaving crossing ``c`` through slot ``s``."""
        a, b = self.edge_ends[self.crossings[c][s]]
        return b if a == (c, s) else a

    def neighbors(self, c: int) -> list[int]:
        return [self.opposite(c, s)[0] for s in range(4)]

    @cached_property
    def graph_components(self) -> list[tuple[int, ...]]:
        return _components(range(self.num_crossings), self._adjacency(()))

    def _adjacency(self, removed: Iterable[int]) -> dict[int, set[int]]:
        removed = set(removed)
        adj: dict[int, set[int]] = {c: set() for c in range(self.num_crossings)}
        for e, ((c1, _), (c2, _)) in self.edge_ends.items():
            if e not in removed:
                adj[c1].add(c2)
                adj[c2].add(c1)
        return adj

    @property
    def is_connected(self) -> bool:
        return len(self.graph_components) == 1

    def require_connected(self) -> None:
        if not self.is_connected:
            raise SplitDiagramError("split diagram: the diagram graph is disconnected")

    @cached_property
    def faces(self) -> list[Face]:
        seen: set[tuple[int, int]] = set()
        faces: list[Face] = []
        for c in range(self.num_crossings):
            for s in range(4):
                if (c, s) in seen:
                    continue
                corners, edges = [], []
                cur = (c, s)
                while cur not in seen:
                    seen.add(cur)
                    edges.append(self.crossings[cur[0]][cur[1]])
                    c2, s2 = self.opposite(*cur)
                    nxt = (c2, (s2 - 1) % 4)
                    corners.append((c2, (s2 - 1) % 4))
                    cur = nxt
                # corner i is reached after edge i; rotate so corner i precedes edge i
                corners = corners[-1:] + corners[:-1]
                faces.append(Face(len(faces), tuple(corners), tuple(edges)))
        return faces

    @cached_property
    def corner_face(self) -> dict[tuple[int, int], int]:
        return {corner: f.index for f in self.faces for corner in f.corners}

    @cached_property
    def edge_faces(self) -> dict[int, tuple[int, int]]:
        """Faces on either side of each edge: (left of slot-order, right)."""
        out = {}
        for e, ((c, s), _) in self.edge_ends.items():
            out[e] = (self.corner_face[(c, s)], self.corner_face[(c, (s - 1) % 4)])
        return out

    # -- strands and components -------------------------------------------

    @cached_property
    def _walks(self) -> tuple[list[tuple[int, ...]], frozenset[tuple[int, int]]]:
        """Strand walks: components as edge-label tuples plus the arrival ends."""
        seen: set[int] = set()
        comps = []
        incoming: set[tuple[int, int]] = set()
        for e in self.edge_ends:
            if e in seen:
                continue
            comp = []
            start = self.edge_ends[e][0]
            cur = start
            while True:
                lab = self.crossings[cur[0]][cur[1]]
                seen.add(lab)
                comp.append(lab)
                c2, s2 = self.opposite(*cur)
                incoming.add((c2, s2))
                cur = (c2, (s2 + 2) % 4)
                if cur == start:
                    break
            comps.append(tuple(comp))
        return comps, frozenset(incoming)

    @property
    def components(self) -> list[tuple[int, ...]]:
        """Link components as tuples of edge labels in strand order."""
        return self._walks[0]

    @cached_property
    def edge_component(self) -> dict[int, int]:
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    @property
    def num_components(self) -> int:
        return len(self.components)

    def strand_component(self, c: int, over: bool) -> int:
        return self.edge_component[self.crossings[c][1 if over else 0]]

    @cached_property
    def oriented(self) -> "LinkDiagram":
        """Relabel edges 1..2V along oriented components, slot 0 incoming under."""
        comps, incoming = self._walks
        new_label = {}
        for comp in comps:
            for e in comp:
                new_label[e] = len(new_label) + 1
        out = []
        for c, lab in enumerate(self.crossings):
            rot = 0 if (c, 0) in incoming else 2
            seq = lab[rot:] + lab[:rot]
            out.append(tuple(new_label[e] for e in seq))
        return LinkDiagram(tuple(out), self.label, _check=False)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Crossing signs; +1 when the over-strand runs from slot 3 to slot 1."""
        d = self.oriented
        _, incoming = d._walks
        return tuple(+1 if (c, 3) in incoming else -1 for c in range(d.num_crossings))

    # -- twist regions ----------------------------------------------------

    @cached_property
    def bigon_corners(self) -> dict[int, dict[int, int]]:
        """For each crossing, corner index -> crossing across that bigon."""
        out: dict[int, dict[int, int]] = {c: {} for c in range(self.num_crossings)}
        for f in self.faces:
            if f.degree == 2:
                (c1, k1), (c2, k2) = f.corners
                if c1 != c2:
                    out[c1][k1] = c2
                    out[c2][k2] = c1
        return out

    @cached_property
    def twist_regions(self) -> list[TwistRegion]:
        bc = self.bigon_corners
        uf = _UnionFind(range(self.num_crossings))
        for c, corners in bc.items():
            for other in corners.values():
                uf.union(c, other)
        groups: dict[int, list[int]] = defaultdict(list)
        for c in range(self.num_crossings):
            groups[uf.find(c)].append(c)
        regions = []
        for members in sorted(groups.values(), key=min):
            regions.append(self._make_region(len(regions), sorted(members)))
        return regions

    def _make_region(self, index: int, members: list[int]) -> TwistRegion:
        bc = self.bigon_corners
        cf = self.corner_face
        if len(members) == 1:
            (c,) = members
            return TwistRegion(
                index,
                (c,),
                +1,
                ((c, 0), (c, 1), (c, 2), (c, 3)),
                (cf[(c, 0)], cf[(c, 2)]),
                (cf[(c, 1)], cf[(c, 3)]),
            )
        for c in members:
            ks = set(bc[c])
            if any((k + 1) % 4 in ks for k in ks):
                # only the 2-crossing Hopf-type diagram has bigons on both axes
                return TwistRegion(
                    index, tuple(members), +1, (), (), (), cyclic=True
                )
        ends = [c for c in members if len(bc[c]) == 1]
        if not ends:
            start = members[0]
            k0 = min(bc[start])
            order = self._walk_chain(start, (k0 + 2) % 4, len(members))
            return TwistRegion(
                index,
                tuple(order),
                +1 if k0 % 2 == 0 else -1,
                (),
                (),
                (cf[(start, (k0 + 1) % 4)], cf[(start, (k0 + 3) % 4)]),
                cyclic=True,
            )
        start = min(ends)
        (k,) = bc[start]
        order = self._walk_chain(start, k, len(members))
        last = order[-1]
        (k_last,) = bc[last]
        m, m2 = (k + 2) % 4, (k_last + 2) % 4
        ports = ((start, m), (start, (m + 1) % 4), (last, m2), (last, (m2 + 1) % 4))
        return TwistRegion(
            index,
            tuple(order),
            +1 if k % 2 == 0 else -1,
            ports,
            (cf[(start, m)], cf[(last, m2)]),
            (cf[(start, (m + 1) % 4)], cf[(last, (m2 + 1) % 4)]),
        )

    def _walk_chain(self, start: int, k: int, n: int) -> list[int]:
        """Follow bigons from ``start`` leaving through its corner ``k``."""
        bc = self.bigon_corners
        order = [start]
        cur, corner = start, k
        while len(order) < n:
            nxt = bc[cur][corner]
            # the shared bigon sits at some corner of nxt; continue opposite to it
            back = next(kk for kk, o in bc[nxt].items() if o == cur and
                        self.corner_face[(nxt, kk)] == self.corner_face[(cur, corner)])
            order.append(nxt)
            cur, corner = nxt, (back + 2) % 4
            if corner not in bc[cur]:
                break
        return order

    @cached_property
    def region_of(self) -> dict[int, int]:
        return {c: r.index for r in self.twist_regions for c in r.crossings}

    def component_stats(self, regions: Optional[Sequence[TwistRegion]] = None) -> list[ComponentStats]:
        regions = self.twist_regions if regions is None else regions
        visits = [0] * self.num_components
        for r in regions:
            c = r.crossings[0]
            visits[self.strand_component(c, over=False)] += 1
            visits[self.strand_component(c, over=True)] += 1
        return [ComponentStats(j, v) for j, v in enumerate(visits)]

    # -- prime and twist-reduced -------------------------------------------

    def is_prime(self) -> Verdict:
        self.require_connected()
        for f in self.faces:
            if f.degree == 1:
                return Verdict(False, PrimeWitness("monogon", f.edges, (f.index,)))
        by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
        for e, (f, g) in self.edge_faces.items():
            if f != g:
                by_pair[(min(f, g), max(f, g))].append(e)
        for (f, g), es in sorted(by_pair.items()):
            for e1, e2 in combinations(es, 2):
                parts = _components(range(self.num_crossings), self._adjacency((e1, e2)))
                if len(parts) == 2:
                    return Verdict(
                        False,
                        PrimeWitness("cut", (e1, e2), (f, g), tuple(frozenset(p) for p in parts)),
                    )
        return Verdict(True)

    def is_twist_reduced(self) -> Verdict:
        self.require_connected()
        if not self.is_prime():
            raise PreconditionError("is_twist_reduced requires a prime diagram")
        cf = self.corner_face
        n = self.num_crossings
        opp_pairs = {}
        for c in range(n):
            pairs = set()
            for k in (0, 1):
                f, g = cf[(c, k)], cf[(c, k + 2)]
                pairs.add((min(f, g), max(f, g), k))
            opp_pairs[c] = pairs
        for c1, c2 in combinations(range(n), 2):
            for f, g, k1 in opp_pairs[c1]:
                for f2, g2, k2 in opp_pairs[c2]:
                    if (f, g) != (f2, g2):
                        continue
                    # the curve cuts one of the two remaining corners at each crossing
                    for h1 in ((k1 + 1) % 4, (k1 + 3) % 4):
                        for h2 in ((k2 + 1) % 4, (k2 + 3) % 4):
                            w = self._check_four_cut(c1, h1, c2, h2, (f, g))
                            if w is not None:
                                return Verdict(False, w)
        return Verdict(True)

    def _check_four_cut(self, c1, h1, c2, h2, faces) -> Optional[TwistWitness]:
        cut = {
            self.crossings[c1][h1],
            self.crossings[c1][(h1 + 1) % 4],
            self.crossings[c2][h2],
            self.crossings[c2][(h2 + 1) % 4],
        }
        parts = _components(range(self.num_crossings), self._adjacency(cut))
        if len(parts) < 2:
            return None
        sides = [frozenset(p) for p in parts]
        if any(self._is_bigon_row(side, c1, c2) for side in sides):
            return None
        if len(sides) > 2:
            # several pieces on one side: the cut is not a single simple curve
            return None
        return TwistWitness((c1, c2), faces, tuple(sorted(cut)), (sides[0], sides[1]))

    def _is_bigon_row(self, side: frozenset[int], c1: int, c2: int) -> bool:
        chain = set(side) | {c1, c2}
        r1, r2 = self.region_of[c1], self.region_of[c2]
        if r1 != r2:
            return False
        region = self.twist_regions[r1]
        if region.cyclic:
            return chain <= set(region.crossings)
        order = region.crossings
        i, j = sorted((order.index(c1), order.index(c2)))
        return chain == set(order[i : j + 1])

    # -- misc --------------------------------------------------------------

    def to_pd(self) -> str:
        d = self.oriented
        return " ".join("X(%d,%d,%d,%d)" % c for c in d.crossings)

    def to_json(self) -> dict:
        d = self.oriented
        return {
            "crossings": [list(c) for c in d.crossings],
            "signs": list(self.signs),
            "label": self.label,
        }

    def __repr__(self):
        return f"<LinkDiagram {self.label or ''} V={self.num_crossings} comps={self.num_components}>"


def _components(nodes: Iterable[int], adj: dict[int, set[int]]) -> list[tuple[int, ...]]:
    nodes = list(nodes)
    seen: set[int] = set()
    out = []
    for start in nodes:
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            comp.append(v)
            for w in sorted(adj[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out.append(tuple(sorted(comp)))
    return out


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def twist_regions(d: LinkDiagram) -> list[TwistRegion]:
    return d.twist_regions


def faces(d: LinkDiagram) -> list[Face]:
    return d.faces


def is_prime(d: LinkDiagram) -> Verdict:
    return d.is_prime()


def is_twist_reduced(d: LinkDiagram) -> Verdict:
    return d.is_twist_reduced()


def component_stats(d: LinkDiagram, regions=None) -> list[ComponentStats]:
    return d.component_stats(regions)
