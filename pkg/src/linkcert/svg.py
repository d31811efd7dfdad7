"""SVG pictures of cusp tilings.

Only combinatorics are drawn: every boundary rectangle is a unit square in
``(w, s)`` coordinates, shaded sides are the vertical ones.  Lattice
translates of the fundamental block are drawn faintly so that a half-twist
shear is visible.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .polyhedra import UNKNOWN, CuspTorus

UNIT = 40
PAD = 60


def _fmt(x: float) -> str:
    return f"{x:.1f}".rstrip("0").rstrip(".")


def cusp_svg(cusp: CuspTorus, title: str = "") -> str:
    (a, b), (_, c) = cusp.lattice
    centers = [center for _, center, _ in cusp.placement]
    copies = [(i * a, i * b + j * c) for i in (-1, 0, 1) for j in (-1, 0, 1)]
    xs = [x + dx for x, _ in centers for dx, _ in copies]
    ys = [y + dy for _, y in centers for _, dy in copies]
    x0, x1 = min(xs) - 0.5, max(xs) + 0.5
    y0, y1 = min(ys) - 0.5, max(ys) + 0.5
    width = (x1 - x0) * UNIT + 2 * PAD
    height = (y1 - y0) * UNIT + 2 * PAD

    def px(x, y):
        # s grows upward
        return PAD + (x - x0) * UNIT, PAD + (y1 - y) * UNIT

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"7\" refY=\"4\" "
        "orient=\"auto\"><path d=\"M0,0 L8,4 L0,8 z\"/></marker></defs>",
        f'<title>{escape(title or f"cusp {cusp.index}")}</title>',
    ]
    for dx, dy in copies:
        main = (dx, dy) == (0, 0)
        for tile, (x, y), _ in cusp.placement:
            left, top = px(x + dx - 0.5, y + dy + 0.5)
            fill = "#f4f4f4" if main else "#fbfbfb"
            stroke = "#222" if main else "#bbb"
            out.append(
                f'<rect x="{_fmt(left)}" y="{_fmt(top)}" width="{UNIT}" height="{UNIT}" '
                f'fill="{fill}" stroke="{stroke}" stroke-width="0.5"/>'
            )
            # shaded sides: vertical
            for sx in (-0.5, 0.5):
                ax, ay = px(x + dx + sx, y + dy - 0.5)
                bx, by = px(x + dx + sx, y + dy + 0.5)
                out.append(
                    f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
                    f'stroke="{"#555" if main else "#ccc"}" stroke-width="3"/>'
                )
            if main:
                cx, cy = px(x, y)
                label = f"P{tile.poly + 1}"
                out.append(
                    f'<text x="{_fmt(cx)}" y="{_fmt(cy + 4)}" font-size="10" '
                    f'text-anchor="middle">{label}</text>'
                )
    ox, oy = centers[0]
    lw, ls = cusp.longitude
    mw, ms = cusp.meridian
    arrows = [(f"meridian ({mw}, {ms})", (mw, ms), "#c0392b", "")]
    if ls == UNKNOWN:
        arrows.append((f"longitude ({lw}, k), k unknown", (lw, 0), "#2471a3", ' stroke-dasharray="6,3"'))
    else:
        arrows.append((f"longitude ({lw}, {ls})", (lw, ls), "#2471a3", ""))
    for i, (name, (vw, vs), color, dash) in enumerate(arrows):
        ax, ay = px(ox, oy)
        bx, by = px(ox + vw, oy + vs)
        out.append(
            f'<line x1="{_fmt(ax)}" y1="{_fmt(ay)}" x2="{_fmt(bx)}" y2="{_fmt(by)}" '
            f'stroke="{color}" stroke-width="2" marker-end="url(#arrow)"{dash}/>'
        )
        out.append(
            f'<text x="{PAD}" y="{_fmt(height - PAD / 2 + 14 * i - 14)}" font-size="12" '
            f'fill="{color}">{escape(name)}</text>'
        )
    head = f"cusp {cusp.index}: {cusp.kind} {cusp.owner}, {cusp.num_tiles} tiles"
    if cusp.half_twist:
        head += f", half twist {cusp.half_twist:+d} (shear by s)"
    out.append(f'<text x="{PAD}" y="{PAD / 2}" font-size="13">{escape(head)}</text>')
    out.append(
        f'<text x="{PAD}" y="{PAD / 2 + 14}" font-size="10" fill="#555">axes: w to the right, '
        f"s upward; thick sides are shaded</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
