import json

import pytest

from linkcert.certify import (
    CERTIFIED,
    CONCLUSIONS,
    FLYPE_NOTE,
    INCONCLUSIVE,
    NO_CONCLUSION,
    SHARPNESS_NOTE,
    THEOREMS,
    certify,
    certify_hyperbolic,
    certify_no_exceptional,
    certify_partial_filling,
    digest,
    genus_bound_value,
    genus_lower_bound,
)
from linkcert.generate import connected_sum, pretzel, table_diagram, two_bridge
from linkcert.pdcode import parse_pd

EIGHT_SEVENS = (7,) * 8  # two components, each through all eight regions


def items(cert):
    return {c.item: c for c in cert.checklist}


def test_hyp_link_certified():
    c = certify_hyperbolic(two_bridge(6, 6))
    assert c.verdict == CERTIFIED
    assert c.conclusion == CONCLUSIONS["hyp-link"]
    assert [b.value for b in c.bounds] == ["2pi", "2pi"]
    assert all(b.strict for b in c.bounds)
    assert c.routes[0].status == "hyperbolic"


def test_hyp_link_five_crossings():
    c = certify_hyperbolic(pretzel(5, 6, 6))
    assert c.verdict == INCONCLUSIVE
    assert c.conclusion == NO_CONCLUSION
    assert items(c)["min a_i >= 6"].observed == 5
    assert "min a_i >= 6" in c.failing()


def test_genus_certificate():
    c = genus_lower_bound(pretzel(7, 7, 7, 6))
    js = c.to_json()
    assert js["genus_lower_bound"] == genus_bound_value(4, 1) == 2
    assert isinstance(js["genus_lower_bound"], int)
    off = genus_lower_bound(pretzel(4, 6, 6)).to_json()
    assert off["verdict"] == INCONCLUSIVE and off["genus_lower_bound"] is None


def test_genus_value_can_be_nonpositive():
    assert genus_bound_value(2, 4) == 0  # ceil(-2/3)
    assert genus_bound_value(6, 6) == -1


def test_main_knot_corollary():
    c = certify_no_exceptional(pretzel(7, 7, 7, 6))
    assert c.theorem == "main-knot-cor" and c.certified
    assert [r.status for r in c.routes] == ["hyperbolike", "hyperbolike"]
    assert sorted(b.value for b in c.bounds if b.kind == "geometric") == [
        "8", "sqrt(37)", "sqrt(50)", "sqrt(50)", "sqrt(50)"]
    assert any(n.startswith("hyperbolike:") for n in c.notes)


def test_three_region_knot_sharpness():
    c = certify_no_exceptional(pretzel(7, 7, 7))
    assert c.verdict == INCONCLUSIVE
    assert "t >= 4" in c.failing()
    assert SHARPNESS_NOTE in c.notes
    main = certify(pretzel(7, 7, 7), "main")[0]
    assert main.verdict == INCONCLUSIVE and SHARPNESS_NOTE in main.notes


def test_main_for_links():
    c = certify_no_exceptional(pretzel(*EIGHT_SEVENS))
    assert c.theorem == "main" and c.certified
    assert items(c)["n_j >= 7"].observed == {"0": 8, "1": 8}
    low = certify_no_exceptional(pretzel(6, 6, 6, 6))
    assert low.verdict == INCONCLUSIVE and "n_j >= 7" in low.failing()


def test_partial_filling():
    c = certify_partial_filling(pretzel(*EIGHT_SEVENS), [1])
    assert c.certified
    assert c.routes[-1].status == "hyperbolic"
    assert "filled components: [1]" in c.notes
    with pytest.raises(ValueError):
        certify_partial_filling(pretzel(*EIGHT_SEVENS), [0, 1])
    with pytest.raises(ValueError):
        certify_partial_filling(pretzel(*EIGHT_SEVENS), [])
    with pytest.raises(ValueError, match="numbered"):
        certify_partial_filling(pretzel(*EIGHT_SEVENS), [5])


def test_not_prime():
    c = certify_hyperbolic(connected_sum(table_diagram("3_1"), table_diagram("3_1")))
    assert "prime" in c.failing()
    assert not c.bounds


def test_not_twist_reduced_mentions_flypes():
    c = certify_hyperbolic(pretzel(1, 7, 1, 7))
    assert "twist-reduced" in c.failing()
    assert FLYPE_NOTE in c.notes


def test_split_diagram_is_inconclusive():
    d = parse_pd("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2) X(11,15,12,14) X(13,11,14,16) X(15,13,16,12)")
    c = certify_hyperbolic(d)
    assert {"connected", "prime", "twist-reduced"} <= set(c.failing())


def test_single_region():
    c = certify_hyperbolic(table_diagram("7_1"))
    assert c.failing() == ["t >= 2"]


def test_dispatch():
    d = pretzel(7, 7, 7, 6)
    assert [c.theorem for c in certify(d, "all")] == ["hyp-link", "genus-bound", "main-knot-cor"]
    for theorem in ("hyp-link", "genus-bound", "main", "main-knot-cor"):
        assert certify(d, theorem)[0].theorem == theorem
    with pytest.raises(ValueError, match="unknown theorem"):
        certify(d, "nope")
    with pytest.raises(ValueError):
        certify(d, "partial-surg-application")
    assert set(THEOREMS) == set(CONCLUSIONS)


def test_json_shape_and_digest():
    d = pretzel(7, 7, 7, 6)
    c = certify_hyperbolic(d)
    js = json.loads(c.dumps())
    assert set(js) == {"theorem", "label", "input_digest", "verdict", "checklist", "bounds",
                       "routes", "conclusion", "notes"}
    assert js["input_digest"] == digest(d) and len(digest(d)) == 16
    assert all(set(i) == {"item", "required", "observed", "pass"} for i in js["checklist"])
    assert c.dumps() == certify_hyperbolic(pretzel(7, 7, 7, 6)).dumps()
