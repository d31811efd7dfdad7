"""One-sided certificates for hyperbolicity, genus and Dehn fillings.

A certificate lists every hypothesis of the theorem it applies with the
value observed on the diagram.  The verdict is CERTIFIED exactly when all
of them pass; otherwise it is INCONCLUSIVE and the conclusion field says
nothing about the link.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Optional

from .augment import AugmentedLink, augment
from .diagram import LinkDiagram, PreconditionError
from .polyhedra import CuspTorus, Decomposition, cusp_tori, decompose
from .slopes import (
    CROSSING_CIRCLE,
    LengthBound,
    ThresholdVerdict,
    combinatorial_length_bound,
    geometric_length_bound,
    recovery_coords,
    six_theorem_check,
    surgery_coords,
    two_pi_check,
)

CERTIFIED = "CERTIFIED"
INCONCLUSIVE = "INCONCLUSIVE"

THEOREMS = ("hyp-link", "genus-bound", "main", "main-knot-cor", "partial-surg-application")

MIN_CROSSINGS = 6
MIN_VISITS = 7
MIN_KNOT_REGIONS = 4

CONCLUSIONS = {
    "hyp-link": "then K is hyperbolic",
    "genus-bound": "genus(K) >= ceil(1 + t/6 - k/2)",
    "main": "every non-trivial Dehn filling of all the components of K is hyperbolike",
    "main-knot-cor": "any non-trivial Dehn filling of K is hyperbolike",
    "partial-surg-application": (
        "a non-trivial Dehn filling of only some components of K yields a "
        "hyperbolic manifold with boundary"
    ),
}
NO_CONCLUSION = "hypotheses not all met; nothing is claimed about K"

HYPERBOLIKE_MEANS = (
    "hyperbolike: (1) irreducible and atoroidal, (2) not Seifert fibered, "
    "(3) pi_1 infinite and word-hyperbolic"
)
SHARPNESS_NOTE = (
    "four twist regions cannot be lowered to three: by Wu, every pretzel knot "
    "with three twist regions and at least two crossings in each has a "
    "non-trivial exceptional surgery"
)
FLYPE_NOTE = "flypes may turn the diagram into a twist-reduced one; none were attempted"


@dataclass(frozen=True)
class ChecklistItem:
    item: str
    required: str
    observed: object
    passed: bool

    def to_json(self) -> dict:
        return {"item": self.item, "required": self.required, "observed": self.observed,
                "pass": self.passed}


@dataclass
class Certificate:
    theorem: str
    label: str
    digest: str
    checklist: list[ChecklistItem]
    bounds: list[LengthBound] = field(default_factory=list)
    routes: list[ThresholdVerdict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    value: Optional[int] = None

    @property
    def verdict(self) -> str:
        return CERTIFIED if all(c.passed for c in self.checklist) else INCONCLUSIVE

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    @property
    def conclusion(self) -> str:
        return CONCLUSIONS[self.theorem] if self.certified else NO_CONCLUSION

    def failing(self) -> list[str]:
        return [c.item for c in self.checklist if not c.passed]

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "label": self.label,
            "input_digest": self.digest,
            "verdict": self.verdict,
            "checklist": [c.to_json() for c in self.checklist],
            "bounds": [b.to_json() for b in self.bounds],
            "routes": [r.to_json() for r in self.routes],
            "conclusion": self.conclusion,
            "notes": list(self.notes),
        }
        if self.theorem == "genus-bound":
            out["genus_lower_bound"] = self.value if self.certified else None
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def digest(d: LinkDiagram) -> str:
    return hashlib.sha256(d.to_pd().encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# the shared hypothesis checks


@dataclass
class _Analysis:
    diagram: LinkDiagram
    items: list[ChecklistItem]
    link: Optional[AugmentedLink] = None
    dec: Optional[Decomposition] = None
    cusps: list[CuspTorus] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(i.passed for i in self.items)

    def visits(self) -> list[int]:
        return [s.visits for s in self.diagram.component_stats()]


def _structure(d: LinkDiagram, need_regions: bool = True) -> _Analysis:
    """Connected, prime, twist-reduced and t >= 2; builds the polyhedra when all hold."""
    items = []
    notes = []
    connected = d.is_connected
    items.append(ChecklistItem("connected", "diagram graph is connected", connected, connected))
    prime = reduced = False
    if connected:
        prime = bool(d.is_prime())
        items.append(ChecklistItem("prime", "prime diagram", prime, prime))
        if prime:
            reduced = bool(d.is_twist_reduced())
            if not reduced:
                notes.append(FLYPE_NOTE)
        items.append(ChecklistItem("twist-reduced", "twist-reduced diagram",
                                   reduced if prime else "not checked (diagram not prime)", reduced))
    else:
        items.append(ChecklistItem("prime", "prime diagram", "undefined for a split diagram", False))
        items.append(ChecklistItem("twist-reduced", "twist-reduced diagram",
                                   "undefined for a split diagram", False))
    t = len(d.twist_regions)
    if need_regions:
        items.append(ChecklistItem("t >= 2", "at least 2 twist regions", t, t >= 2))
    a = _Analysis(d, items, notes=notes)
    if connected and prime and reduced and t >= 2:
        a.link = augment(d)
        a.dec = decompose(a.link)
        a.cusps = cusp_tori(a.dec)
        _check_multiplicities(a)
    return a


def _check_multiplicities(a: _Analysis) -> None:
    visits = a.visits()
    for c in a.cusps:
        if c.kind != CROSSING_CIRCLE and c.longitude[0] != visits[c.owner]:
            raise PreconditionError(
                f"strand cusp of component {c.owner} spans {c.longitude[0]} regions, "
                f"diagram count is {visits[c.owner]}"
            )


def _crossings_item(d: LinkDiagram) -> ChecklistItem:
    counts = [r.count for r in d.twist_regions]
    low = min(counts) if counts else 0
    return ChecklistItem("min a_i >= 6", "at least 6 crossings in every twist region", low,
                         bool(counts) and low >= MIN_CROSSINGS)


def _visits_item(d: LinkDiagram, components: Optional[Iterable[int]] = None) -> ChecklistItem:
    visits = [s.visits for s in d.component_stats()]
    chosen = sorted(set(range(len(visits)) if components is None else components))
    low = min(visits[j] for j in chosen)
    return ChecklistItem("n_j >= 7", "every (filled) component passes at least 7 twist regions",
                         {str(j): visits[j] for j in chosen}, low >= MIN_VISITS)


def _circle_bounds(a: _Analysis, kind: str) -> list[LengthBound]:
    out = []
    for c in a.cusps:
        if c.kind != CROSSING_CIRCLE:
            continue
        s = a.link.circles[c.owner].removed_full_twists
        coords = recovery_coords(c, s)
        out.append(geometric_length_bound(coords) if kind == "geometric"
                   else combinatorial_length_bound(coords))
    return out


def _strand_bounds(a: _Analysis, kind: str, components=None) -> list[LengthBound]:
    out = []
    for c in a.cusps:
        if c.kind == CROSSING_CIRCLE or (components is not None and c.owner not in components):
            continue
        coords = surgery_coords(c)
        out.append(geometric_length_bound(coords) if kind == "geometric"
                   else combinatorial_length_bound(coords))
    return out


# ---------------------------------------------------------------------------
# certificates


def certify_hyperbolic(d: LinkDiagram) -> Certificate:
    """Fill the crossing circles of the augmented link along 1/s_i and apply the 2 pi bound."""
    a = _structure(d)
    items = a.items + [_crossings_item(d)]
    cert = Certificate("hyp-link", d.label, digest(d), items, notes=list(a.notes))
    if a.link is not None:
        bounds = _circle_bounds(a, "combinatorial")
        v = two_pi_check(bounds, all_filled=False, filled=[b.cusp for b in bounds])
        cert.bounds, cert.routes = bounds, [v]
        items.append(ChecklistItem("crossing-circle fillings exceed 2pi",
                                   "every crossing circle filled with combinatorial length > 2pi",
                                   v.status, v.status == "hyperbolic"))
    return cert


def genus_bound_value(t: int, k: int) -> int:
    """ceil(1 + t/6 - k/2), exactly."""
    return ceil(1 + Fraction(t, 6) - Fraction(k, 2))


def _faces_meet_in_threes(a: _Analysis) -> bool:
    """Every white face of the polyhedra touches exactly three twist regions."""
    p1 = a.dec.polys[0]
    return all(
        sum(1 for v in f.vertices if v[0] == "C") == 3
        for f in p1.faces
        if f.color == "white"
    )


def genus_lower_bound(d: LinkDiagram) -> Certificate:
    a = _structure(d)
    items = a.items + [_crossings_item(d)]
    t, k = len(d.twist_regions), d.num_components
    cert = Certificate("genus-bound", d.label, digest(d), items, notes=list(a.notes),
                       value=genus_bound_value(t, k))
    cert.notes.append(
        f"t = {t}, k = {k}; the longitudes of K have total combinatorial length at least "
        f"2t pi/3 (each twist region carries two strands, pi/3 each) and every crossing "
        f"circle curve exceeds 2pi, so 2pi genus >= 2pi (1 + t/6 - k/2)"
    )
    if a.dec is not None and _faces_meet_in_threes(a):
        cert.notes.append(
            "every white face meets exactly three twist regions: the bound may be the exact genus "
            "(not verified)"
        )
    return cert


def _routes(a: _Analysis, components, all_filled: bool):
    geo = _circle_bounds(a, "geometric") + _strand_bounds(a, "geometric", components)
    comb = _circle_bounds(a, "combinatorial") + _strand_bounds(a, "combinatorial", components)
    filled = sorted({b.cusp for b in comb})
    routes = []
    if all_filled:
        routes.append(six_theorem_check(geo, all_cusps_filled=True, filled=filled))
    routes.append(two_pi_check(comb, all_filled=all_filled, filled=filled))
    return geo + comb, routes


def certify_no_exceptional(d: LinkDiagram, theorem: Optional[str] = None) -> Certificate:
    """No exceptional filling of all components: both the 6 and 2pi routes are run."""
    knot = d.num_components == 1
    if theorem is None:
        theorem = "main-knot-cor" if knot else "main"
    if theorem not in ("main", "main-knot-cor"):
        raise ValueError(f"unknown theorem {theorem!r} for fillings of all components")
    a = _structure(d)
    items = list(a.items)
    notes = list(a.notes)
    t = len(d.twist_regions)
    if theorem == "main-knot-cor":
        items.append(ChecklistItem("knot", "K has one component", d.num_components, knot))
        items.append(ChecklistItem("t >= 4", "at least 4 twist regions", t, t >= MIN_KNOT_REGIONS))
        items.append(_crossings_item(d))
        if knot:
            notes.append(f"a knot passes each twist region twice: n_1 = 2t = {2 * t}")
    else:
        items.append(_crossings_item(d))
        items.append(_visits_item(d))
    if knot and t == 3:
        notes.append(SHARPNESS_NOTE)
    cert = Certificate(theorem, d.label, digest(d), items, notes=notes)
    if a.link is not None:
        cert.bounds, cert.routes = _routes(a, None, all_filled=True)
        passed = [r.certified for r in cert.routes]
        if all(i.passed for i in items) and not all(passed):
            raise RuntimeError("hypotheses hold but a length route failed: " +
                               json.dumps([r.to_json() for r in cert.routes]))
        if any(passed) and not all(passed):
            raise RuntimeError("the geometric and combinatorial routes disagree")
        items.append(ChecklistItem("slope routes", "6-Theorem and 2pi-Theorem both certify",
                                   [r.status for r in cert.routes], all(passed)))
    if cert.certified:
        cert.notes.append(HYPERBOLIKE_MEANS)
        cert.notes.append("strand bounds use only the w coefficient and hold for every "
                          "value of the undetermined longitude coefficient k")
    return cert


def certify_partial_filling(d: LinkDiagram, filled_components: Iterable[int]) -> Certificate:
    filled = sorted(set(filled_components))
    k = d.num_components
    if not filled or len(filled) >= k:
        raise ValueError("fill a proper, nonempty set of components; "
                         "use certify_no_exceptional to fill all of them")
    if any(j < 0 or j >= k for j in filled):
        raise ValueError(f"components are numbered 0..{k - 1}")
    a = _structure(d)
    items = a.items + [_crossings_item(d), _visits_item(d, filled)]
    cert = Certificate("partial-surg-application", d.label, digest(d), items, notes=list(a.notes))
    cert.notes.append(f"filled components: {filled}")
    if a.link is not None:
        cert.bounds, cert.routes = _routes(a, set(filled), all_filled=False)
        v = cert.routes[-1]
        items.append(ChecklistItem("filled slopes exceed 2pi",
                                   "combinatorial length > 2pi on every filled cusp",
                                   v.status, v.status == "hyperbolic"))
    return cert


def certify(d: LinkDiagram, theorem: str, fill: Optional[Iterable[int]] = None) -> list[Certificate]:
    """Dispatch by theorem id; ``all`` runs every certificate that applies."""
    if theorem == "all":
        out = [certify_hyperbolic(d), genus_lower_bound(d), certify_no_exceptional(d)]
        if fill is not None:
            out.append(certify_partial_filling(d, fill))
        return out
    if theorem == "hyp-link":
        return [certify_hyperbolic(d)]
    if theorem == "genus-bound":
        return [genus_lower_bound(d)]
    if theorem in ("main", "main-knot-cor"):
        return [certify_no_exceptional(d, theorem)]
    if theorem == "partial-surg-application":
        if fill is None:
            raise ValueError("partial filling needs the filled components")
        return [certify_partial_filling(d, fill)]
    raise ValueError(f"unknown theorem {theorem!r}; choose from {', '.join(THEOREMS)} or all")

