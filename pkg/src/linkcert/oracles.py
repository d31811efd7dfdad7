"""Brute-force reference implementations of the diagram predicates.

These enumerate subsets of crossings instead of reasoning about faces, so
they are exponential and meant for diagrams with a handful of crossings.
A simple closed curve meeting the diagram graph transversely in edge
points corresponds to a bond: a cut whose two sides are both connected.
"""

from __future__ import annotations

from itertools import combinations

from .diagram import LinkDiagram, _components

MAX_ORACLE_CROSSINGS = 14


def _cut(d: LinkDiagram, side: frozenset[int]) -> list[int]:
    return [e for e, ((a, _), (b, _)) in d.edge_ends.items() if (a in side) != (b in side)]


def _connected(d: LinkDiagram, nodes: frozenset[int]) -> bool:
    if not nodes:
        return False
    adj = {c: set() for c in nodes}
    for (a, _), (b, _) in d.edge_ends.values():
        if a in nodes and b in nodes:
            adj[a].add(b)
            adj[b].add(a)
    return len(_components(sorted(nodes), adj)) == 1


def bonds(d: LinkDiagram, size: int):
    """All crossing subsets (containing crossing 0) whose bond has ``size`` edges."""
    n = d.num_crossings
    if n > MAX_ORACLE_CROSSINGS:
        raise ValueError(f"oracle limited to {MAX_ORACLE_CROSSINGS} crossings")
    everything = frozenset(range(n))
    for r in range(1, n):
        for rest in combinations(range(1, n), r - 1):
            side = frozenset((0,) + rest)
            cut = _cut(d, side)
            if len(cut) != size:
                continue
            if _connected(d, side) and _connected(d, everything - side):
                yield side, everything - side, cut


def prime_oracle(d: LinkDiagram) -> bool:
    if any(f.degree == 1 for f in d.faces):
        return False
    for _ in bonds(d, 2):
        return False
    return True


def _dual_cycle(d: LinkDiagram, cut: list[int]) -> list[tuple[int, int]]:
    """Order the cut edges into the dual cycle: (face, edge) pairs."""
    ef = d.edge_faces
    links = {e: set(ef[e]) for e in cut}
    order = [cut[0]]
    face = ef[cut[0]][1]
    seq = [(ef[cut[0]][0], cut[0])]
    while len(order) < len(cut):
        nxt = next(e for e in cut if e not in order and face in links[e])
        seq.append((face, nxt))
        order.append(nxt)
        a, b = ef[nxt]
        face = b if a == face else a
    return seq


def _adjacent_at(d: LinkDiagram, e1: int, e2: int, face: int) -> set[int]:
    """Crossings where ``e1`` and ``e2`` leave through consecutive slots around ``face``."""
    out = set()
    for c, lab in enumerate(d.crossings):
        for k in range(4):
            if {lab[k], lab[(k + 1) % 4]} == {e1, e2} and d.corner_face[(c, k)] == face:
                out.add(c)
    return out


def _is_row(d: LinkDiagram, crossings: set[int], c1: int, c2: int) -> bool:
    """Whether ``crossings`` form a path of bigons running from c1 to c2."""
    adj = {c: set() for c in crossings}
    for f in d.faces:
        if f.degree == 2:
            (a, _), (b, _) = f.corners
            if a in crossings and b in crossings and a != b:
                adj[a].add(b)
                adj[b].add(a)
    if c1 == c2:
        return False
    # walk the unique path from c1; every member must be visited exactly once
    path, prev, cur = [c1], None, c1
    while cur != c2:
        nxt = [x for x in adj[cur] if x != prev and x not in path]
        if len(nxt) != 1:
            return False
        prev, cur = cur, nxt[0]
        path.append(cur)
    return set(path) == crossings


def twist_reduced_oracle(d: LinkDiagram) -> bool:
    for a, b, cut in bonds(d, 4):
        seq = _dual_cycle(d, cut)
        # seq[i] = (face entered before edge i, edge i); faces between edges
        for start in (0, 1):
            i, j = start, start + 2
            f1 = seq[(i + 1) % 4][0]
            f2 = seq[(j + 1) % 4][0]
            cs1 = _adjacent_at(d, seq[i][1], seq[(i + 1) % 4][1], f1)
            cs2 = _adjacent_at(d, seq[j][1], seq[(j + 1) % 4][1], f2)
            for c1 in cs1:
                for c2 in cs2:
                    if c1 == c2:
                        continue
                    ok = any(_is_row(d, set(side) | {c1, c2}, c1, c2) for side in (a, b))
                    if not ok:
                        return False
    return True


def maximal_regions(d: LinkDiagram) -> bool:
    """Check that no two returned twist regions are joined by a bigon."""
    region = d.region_of
    for f in d.faces:
        if f.degree == 2:
            (a, _), (b, _) = f.corners
            if region[a] != region[b]:
                return False
    return True
