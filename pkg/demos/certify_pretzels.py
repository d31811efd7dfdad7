# Certificates for pretzel knots and links, and where they stop applying.

from linkcert.certify import certify, certify_no_exceptional, genus_bound_value
from linkcert.generate import pretzel, two_bridge

knot = pretzel(7, 7, 7, 6)
for cert in certify(knot, "all"):
    print(cert.theorem, cert.verdict)
    for b in cert.bounds:
        print("   cusp", b.cusp, b.kind, b.value, "(strict)" if b.strict else "")
    print("  ", cert.conclusion)

# both length routes must agree
cor = certify_no_exceptional(knot)
print([r.to_json() for r in cor.routes])

# three regions is not enough for the knot corollary
three = certify_no_exceptional(pretzel(7, 7, 7))
print(three.verdict, three.failing())
print(three.notes[-1])

# a region with five crossings
print(certify(pretzel(5, 7, 7, 6), "hyp-link")[0].failing())

# genus bounds on a few families
for t in range(2, 9):
    print(t, [genus_bound_value(t, k) for k in (1, 2, 3)])

# a two-component link where every component passes eight regions
link = pretzel(7, 7, 7, 7, 7, 7, 7, 7)
print([s.visits for s in link.component_stats()])
for cert in certify(link, "all", fill=[0]):
    print(cert.theorem, cert.verdict)

print(two_bridge(6, 6).to_pd())
print(certify(two_bridge(6, 6), "hyp-link")[0].dumps()[:200], "...")
