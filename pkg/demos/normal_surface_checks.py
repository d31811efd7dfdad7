# Brute-force checks on the polyhedra of C(6,6): normal curves, areas,
# angled polyhedra and Gauss-Bonnet.

import time
from fractions import Fraction

from linkcert.augment import augment
from linkcert.generate import two_bridge
from linkcert.normalsurf import (
    GaussBonnetError,
    TruncatedPolyhedron,
    area_oracle,
    boundary_bigon,
    comb_area,
    counts,
    face_parallel_triangle,
    faulty_surface,
    gauss_bonnet,
    relative_length,
    standard_surfaces,
    verify_angled,
    vertex_link,
)
from linkcert.polyhedra import decompose

dec = decompose(augment(two_bridge(6, 6)))
tp = TruncatedPolyhedron(dec.polys[0], 0)

# areas in units of pi/6
v = vertex_link(tp, tp.poly.vertices[0])
b = boundary_bigon(tp, tp.poly.edges[0])
tri = face_parallel_triangle(tp, 0)
print("vertex link", counts(tp, v), comb_area(tp, v))
print("bigon      ", counts(tp, b), comb_area(tp, b))
print("triangle   ", counts(tp, tri), comb_area(tp, tri), "per boundary arc", relative_length(tp, tri))

t0 = time.perf_counter()
rep = area_oracle(dec)
print(rep.to_json()["classes"], "failures:", rep.failures, f"{time.perf_counter() - t0:.2f}s")

# the full list, without the weight cap
t0 = time.perf_counter()
full = area_oracle(dec, exhaustive=True)
print(full.curves, "curves, passed:", full.passed, f"{time.perf_counter() - t0:.2f}s")

ang = verify_angled(dec)
print("angled:", ang.passed, ang.curves_checked, "dual curves")

for s in standard_surfaces(dec):
    r = gauss_bonnet(s)
    print(f"{r.label:45s} a={Fraction(r.area, 6)}pi chi={r.euler} arcs={r.arcs} holds={r.holds}")

try:
    gauss_bonnet(faulty_surface(dec))
except GaussBonnetError as e:
    print("faulty gluing rejected:", e)
