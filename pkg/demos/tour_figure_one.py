# A walk through the pipeline on the three-region knot P(4,1,3).
# Run from the repository root:  python3 demos/tour_figure_one.py

from pathlib import Path

from linkcert.augment import augment, recovery_slopes
from linkcert.generate import figure_one
from linkcert.polyhedra import cusp_tori, decompose
from linkcert.svg import cusp_svg

d = figure_one()
print(d.to_pd())
print("crossings", d.num_crossings, "faces", len(d.faces), "components", d.num_components)

# twist regions: maximal chains of bigons
for r in d.twist_regions:
    print("region", r.index, "count", r.count, "handedness", r.handedness, "crossings", r.crossings)

print("prime:", bool(d.is_prime()), " twist-reduced:", bool(d.is_twist_reduced()))
print("regions visited per component:", [s.visits for s in d.component_stats()])

# one crossing circle per region; full twists come out, a half twist may stay
a = augment(d)
for c in a.circles:
    print(c.to_json())
print("fillings that give back the knot:", recovery_slopes(a))

dec = decompose(a)
p1, p2 = dec.polys
print(p1.name, len(p1.vertices), "ideal vertices,", len(p1.faces), "faces")
print("shaded faces are triangles:", sorted({f.degree for f in p1.faces if f.color == "shaded"}))
print("edge classes", len(dec.edge_classes), "gluing problems", dec.check_gluing())

out = Path("demos/out")
out.mkdir(exist_ok=True)
for cusp in cusp_tori(dec):
    print(cusp.to_json())
    (out / f"fig1_cusp{cusp.index}.svg").write_text(cusp_svg(cusp, f"P(4,1,3) cusp {cusp.index}"))
print("pictures in", out)
