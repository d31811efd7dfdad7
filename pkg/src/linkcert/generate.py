"""Diagram generators: twist expansion, pretzels, 2-bridge links, sums.

Everything here builds PD tuples directly; the result is always passed
through :class:`LinkDiagram` validation.
"""

from __future__ import annotations

from typing import Sequence

from .diagram import DiagramError, LinkDiagram

Crossing = tuple[int, int, int, int]


def _rotate(c: Sequence[int], r: int) -> Crossing:
    r %= 4
    return tuple(c[r:]) + tuple(c[:r])  # type: ignore[return-value]


def _chain(x: Crossing, n: int, fresh: int) -> tuple[list[Crossing], int]:
    """Replace crossing ``x`` by ``n`` crossings joined by bigons at corners 0/2.

    Slots 0,1 of ``x`` stay on the first crossing and slots 2,3 on the last;
    crossing ``m`` meets crossing ``m+1`` through its slots 3 and 2.
    """
    if n == 1:
        return [x], fresh
    out = []
    a, b, c, d = x
    left = (a, b)
    for m in range(n):
        if m == n - 1:
            right = (c, d)
        else:
            right = (fresh, fresh + 1)
            fresh += 2
        # slot 2 -> next slot 1, slot 3 -> next slot 0
        out.append((left[0], left[1], right[0], right[1]))
        left = (right[1], right[0])
    return out, fresh


def expand_twists(
    skeleton: Sequence[Sequence[int]],
    counts: Sequence[int],
    axes: Sequence[int] | None = None,
    label: str = "",
) -> LinkDiagram:
    """Replace crossing ``i`` of ``skeleton`` by a twist of ``|counts[i]|`` crossings.

    ``axes[i]`` picks the direction of the new bigons: 0 runs the chain
    through corners 0/2 of the original crossing, 1 through corners 1/3.
    A negative count mirrors every crossing of that twist.
    """
    if len(counts) != len(skeleton):
        raise DiagramError("one count per skeleton crossing is required")
    axes = [0] * len(skeleton) if axes is None else list(axes)
    fresh = 1 + max(max(c) for c in skeleton)
    out: list[Crossing] = []
    for x, n, ax in zip(skeleton, counts, axes):
        if n == 0:
            raise DiagramError("twist counts must be non-zero")
        base = _rotate(x, ax)
        chain, fresh = _chain(base, abs(n), fresh)
        for y in chain:
            y = _rotate(y, -ax)
            if n < 0:
                y = _rotate(y, 1)
            out.append(y)
    return LinkDiagram(tuple(out), label)


def torus_skeleton(t: int) -> list[Crossing]:
    """The standard closed 2-braid diagram with ``t`` crossings."""
    if t < 2:
        raise DiagramError("a closed 2-braid skeleton needs at least 2 crossings")
    u = [1 + 2 * i for i in range(t)]
    d = [2 + 2 * i for i in range(t)]
    return [(u[i - 1], d[i - 1], d[i], u[i]) for i in range(t)]


def torus_link(t: int) -> LinkDiagram:
    return LinkDiagram(tuple(torus_skeleton(t)), f"T(2,{t})")


def pretzel(*counts: int) -> LinkDiagram:
    """Pretzel link P(a1, ..., at): vertical twists side by side."""
    if len(counts) < 2:
        raise DiagramError("a pretzel needs at least two columns")
    name = "P(" + ",".join(str(a) for a in counts) + ")"
    return expand_twists(torus_skeleton(len(counts)), counts, [1] * len(counts), name)


def pretzel_is_knot(counts: Sequence[int]) -> bool:
    evens = sum(1 for a in counts if a % 2 == 0)
    return evens == 1 or (evens == 0 and len(counts) % 2 == 1)


def two_bridge(a: int, b: int) -> LinkDiagram:
    """Two twist regions of ``a`` and ``b`` crossings closed up as a 2-bridge link."""
    return expand_twists(torus_skeleton(2), (a, b), (1, 0), f"C({a},{b})")


def figure_one() -> LinkDiagram:
    """Three twist regions with 4, 1 and 3 crossings (2, 1/2 and 3/2 twists)."""
    d = pretzel(4, 1, 3)
    return LinkDiagram(d.crossings, "fig1")


def connected_sum(d1: LinkDiagram, d2: LinkDiagram, e1: int | None = None,
                  e2: int | None = None) -> LinkDiagram:
    """Band two diagrams together across edge ``e1`` of ``d1`` and ``e2`` of ``d2``."""
    e1 = d1.edges[0] if e1 is None else e1
    e2 = d2.edges[0] if e2 is None else e2
    shift = max(d1.edges)
    cr1 = [list(c) for c in d1.crossings]
    cr2 = [[x + shift for x in c] for c in d2.crossings]
    (_, _), (c1b, s1b) = d1.edge_ends[e1]
    (_, _), (c2b, s2b) = d2.edge_ends[e2]
    # swap the far ends of the two cut edges
    cr1[c1b][s1b] = e2 + shift
    cr2[c2b][s2b] = e1
    label = f"{d1.label or 'D1'}#{d2.label or 'D2'}"
    return LinkDiagram(tuple(tuple(c) for c in cr1 + cr2), label)


def mirror(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(tuple(_rotate(c, 1) for c in d.crossings), d.label + "*")


def relabel(d: LinkDiagram, perm: Sequence[int]) -> LinkDiagram:
    """Reorder crossings (``perm[i]`` is the old index of new crossing ``i``)."""
    return LinkDiagram(tuple(d.crossings[i] for i in perm), d.label)


TABLE_PD = {
    "3_1": "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)",
    "4_1": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
    "5_1": "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
    "5_2": "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
    "6_1": "X(1,4,2,5) X(7,10,8,11) X(3,9,4,8) X(9,3,10,2) X(5,12,6,1) X(11,6,12,7)",
    "6_2": "X(1,4,2,5) X(5,10,6,11) X(3,9,4,8) X(9,3,10,2) X(7,12,8,1) X(11,6,12,7)",
    "6_3": "X(4,2,5,1) X(8,4,9,3) X(12,9,1,10) X(10,5,11,6) X(6,11,7,12) X(2,8,3,7)",
    "7_1": "X(1,8,2,9) X(3,10,4,11) X(5,12,6,13) X(7,14,8,1) X(9,2,10,3) X(11,4,12,5) X(13,6,14,7)",
    "hopf": "X(4,1,3,2) X(2,3,1,4)",
}


def table_diagram(name: str) -> LinkDiagram:
    from .pdcode import parse_pd

    return parse_pd(TABLE_PD[name], label=name)


def small_corpus() -> list[LinkDiagram]:
    """Connected diagrams with at most 8 crossings used for oracle checks."""
    out = [table_diagram(n) for n in TABLE_PD]
    out += [
        pretzel(1, 1, 1, 1),
        pretzel(2, 2, 2),
        pretzel(2, 2, 3),
        pretzel(2, 3, 3),
        pretzel(3, 3, 2),
        pretzel(2, 2, 2, 2),
        pretzel(1, 3, 1, 3),
        pretzel(1, 2, 1, 2),
        pretzel(1, 1, 3),
        pretzel(-2, 3, 3),
        figure_one(),
        two_bridge(2, 2),
        two_bridge(3, 2),
        two_bridge(2, 4),
        two_bridge(3, 3),
        two_bridge(4, 4),
        torus_link(4),
        connected_sum(table_diagram("3_1"), table_diagram("3_1")),
        connected_sum(table_diagram("3_1"), table_diagram("hopf")),
        connected_sum(table_diagram("4_1"), table_diagram("hopf")),
        connected_sum(table_diagram("hopf"), table_diagram("hopf")),
    ]
    return out
