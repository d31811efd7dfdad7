"""Randomized invariants over generated diagrams."""

import json
from fractions import Fraction
from math import ceil

from hypothesis import given, settings
from hypothesis import strategies as st

from linkcert.augment import augment
from linkcert.certify import certify_hyperbolic, genus_bound_value
from linkcert.generate import pretzel, relabel, two_bridge
from linkcert.pdcode import parse_diagram, parse_json
from linkcert.polyhedra import cusp_tori, decompose
from linkcert.slopes import (
    KNOT_STRAND,
    UNKNOWN,
    SlopeCoords,
    combinatorial_length_bound,
    geometric_length_bound,
)

column = st.integers(min_value=2, max_value=9).flatmap(lambda a: st.sampled_from([a, -a]))
columns = st.lists(column, min_size=3, max_size=5)
settings.register_profile("linkcert", max_examples=40, deadline=None, derandomize=True)
settings.load_profile("linkcert")


@given(columns)
def test_diagram_invariants(cs):
    d = pretzel(*cs)
    assert d.num_crossings - len(d.edges) + len(d.faces) == 2
    regions = d.twist_regions
    assert sorted(c for r in regions for c in r.crossings) == list(range(d.num_crossings))
    assert sum(s.visits for s in d.component_stats()) == 2 * len(regions)


@given(columns, st.randoms(use_true_random=False))
def test_relabel_invariance(cs, rnd):
    d = pretzel(*cs)
    perm = list(range(d.num_crossings))
    rnd.shuffle(perm)
    e = relabel(d, perm)
    assert sorted(r.count for r in e.twist_regions) == sorted(r.count for r in d.twist_regions)
    assert bool(e.is_prime()) == bool(d.is_prime())
    assert certify_hyperbolic(e).verdict == certify_hyperbolic(d).verdict


@given(columns)
def test_text_round_trips(cs):
    d = pretzel(*cs)
    assert parse_diagram(d.to_pd()).to_pd() == d.to_pd()
    assert parse_json(json.dumps(d.to_json())).to_pd() == d.to_pd()


@given(st.lists(st.integers(min_value=2, max_value=9), min_size=3, max_size=4))
def test_decomposition_invariants(cs):
    d = pretzel(*cs)
    dec = decompose(augment(d))
    assert dec.check_gluing() == []
    assert dec.isomorphic_halves()
    cusps = cusp_tori(dec)
    assert len(cusps) == d.num_components + len(cs)
    visits = [s.visits for s in d.component_stats()]
    for c in cusps:
        assert c.num_tiles == (2 if c.kind == "crossing-circle" else 2 * visits[c.owner])


@given(st.integers(6, 10), st.integers(6, 10))
def test_two_bridge_certified(a, b):
    assert certify_hyperbolic(two_bridge(a, b)).certified


@given(st.integers(-50, 50), st.integers(-20, 20))
def test_genus_formula(t, k):
    assert genus_bound_value(t, k) == ceil(1 + Fraction(t, 6) - Fraction(k, 2))
    assert genus_bound_value(t + 6, k) == genus_bound_value(t, k) + 1


@given(st.integers(1, 200))
def test_strand_bounds_agree(n):
    c = SlopeCoords(0, n, UNKNOWN, KNOT_STRAND, True)
    geo = geometric_length_bound(c)
    comb = combinatorial_length_bound(c)
    # both routes have threshold at n = 6 for a strand
    assert geo.exceeds_threshold() == comb.exceeds_threshold() == (n > 6)
