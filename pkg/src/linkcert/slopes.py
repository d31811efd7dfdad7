"""Surgery curves in the cusp lattices and lower bounds on their lengths.

Lattice coordinates are ``(w, s)`` pairs: ``w`` steps run parallel to a
white face, ``s`` steps parallel to a shaded face.  A slope ``p/q`` means
the curve ``p * meridian + q * longitude``.

Geometric bounds come from a cusp expansion in which ``s`` has length 1,
``w`` has length at least 1 and the two are perpendicular, so the curve
``x w + y s`` is at least ``sqrt(x^2 + y^2)`` long.  They are kept as
radicands and compared with 36 rather than 6.

Combinatorial bounds are kept in units of pi/6, like areas.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Iterable, Optional, Sequence, Union

from .polyhedra import UNKNOWN, CuspTorus

WILDCARD = "any-nontrivial"
CROSSING_CIRCLE = "crossing-circle"
KNOT_STRAND = "knot-strand"

SIX_SQUARED = 36
TWO_PI = 12  # pi/6 units


class SlopeError(ValueError):
    pass


@dataclass(frozen=True)
class SlopeCoords:
    cusp: int
    w_coeff: Optional[int]
    s_coeff: Union[int, str, None]  # UNKNOWN when the longitude's s part is undetermined
    provenance: str
    nontrivial: bool
    slope: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "cusp": self.cusp,
            "w": self.w_coeff,
            "s": self.s_coeff,
            "provenance": self.provenance,
            "nontrivial": self.nontrivial,
            "slope": self.slope,
        }


def _parse_slope(slope) -> tuple[int, int]:
    if isinstance(slope, tuple):
        p, q = slope
    elif isinstance(slope, str):
        if slope.strip() in ("inf", "1/0"):
            return 1, 0
        try:
            if "/" in slope:
                p, q = (int(x) for x in slope.split("/"))
            else:
                p, q = int(slope), 1
        except ValueError:
            raise SlopeError(f"cannot read slope {slope!r}") from None
    else:
        f = Fraction(slope)
        p, q = f.numerator, f.denominator
    if p == 0 and q == 0:
        raise SlopeError("0/0 is not a slope")
    return int(p), int(q)


def surgery_coords(cusp: CuspTorus, slope=WILDCARD) -> SlopeCoords:
    """Coordinates of the surgery curve of ``slope`` on ``cusp``.

    On a crossing circle the meridian is ``(1, h)`` (``h`` the half twist)
    and the longitude ``(0, 2)``, so ``1/s`` lands on ``(1, h + 2s)``.  On
    a knot strand the meridian is ``(0, 2)`` and the longitude ``(n, k)``
    with ``k`` unknown, so only the ``w`` coefficient ``q n`` is known.
    """
    if cusp.kind == CROSSING_CIRCLE:
        if slope == WILDCARD:
            raise SlopeError("crossing circles are filled along a definite slope")
        p, q = _parse_slope(slope)
        mw, ms = cusp.meridian
        lw, ls = cusp.longitude
        w, s = p * mw + q * lw, p * ms + q * ls
        return SlopeCoords(cusp.index, w, s, CROSSING_CIRCLE, q != 0, f"{p}/{q}")
    n = cusp.longitude[0]
    if slope == WILDCARD:
        return SlopeCoords(cusp.index, n, UNKNOWN, KNOT_STRAND, True, WILDCARD)
    p, q = _parse_slope(slope)
    if q == 0:
        return SlopeCoords(cusp.index, None, None, KNOT_STRAND, False, f"{p}/{q}")
    return SlopeCoords(cusp.index, q * n, UNKNOWN, KNOT_STRAND, True, f"{p}/{q}")


def recovery_coords(cusp: CuspTorus, removed_full_twists: int) -> SlopeCoords:
    """The curve whose filling puts back the removed full twists.

    With nothing removed this is the meridian, whose filling deletes the
    circle; it still counts as a filling of the augmented link.
    """
    if cusp.kind != CROSSING_CIRCLE:
        raise SlopeError("recovery slopes live on crossing circles")
    c = surgery_coords(cusp, (1, removed_full_twists))
    return SlopeCoords(c.cusp, c.w_coeff, c.s_coeff, c.provenance, True, c.slope)


@dataclass(frozen=True)
class LengthBound:
    cusp: int
    kind: str  # "geometric" or "combinatorial"
    n: int
    radicand: Optional[int] = None  # geometric: length >= sqrt(radicand)
    units: Optional[int] = None  # combinatorial: length >= units * pi/6
    strict: bool = False

    @property
    def value(self) -> str:
        if self.kind == "geometric":
            r = self.radicand
            root = isqrt(r)
            return str(root) if root * root == r else f"sqrt({r})"
        f = Fraction(self.units, 6)
        top = "pi" if f.numerator == 1 else f"{f.numerator}pi"
        return top if f.denominator == 1 else f"{top}/{f.denominator}"

    def exceeds_threshold(self) -> bool:
        """Certified above 6 (geometric) or 2 pi (combinatorial)."""
        if self.kind == "geometric":
            x, limit = self.radicand, SIX_SQUARED
        else:
            x, limit = self.units, TWO_PI
        return x > limit or (x == limit and self.strict)

    def to_json(self) -> dict:
        return {"cusp": self.cusp, "kind": self.kind, "value": self.value, "strict": self.strict}


def geometric_length_bound(coords: SlopeCoords) -> LengthBound:
    if not coords.nontrivial or coords.w_coeff is None:
        raise SlopeError("trivial slope has no length bound")
    w = coords.w_coeff
    if coords.s_coeff == UNKNOWN:
        # the s part is unknown; the bound drops it and holds for every k
        return LengthBound(coords.cusp, "geometric", abs(w), radicand=w * w)
    s = coords.s_coeff
    n = abs(s) if coords.provenance == CROSSING_CIRCLE else abs(w)
    return LengthBound(coords.cusp, "geometric", n, radicand=w * w + s * s)


def combinatorial_length_bound(coords: SlopeCoords) -> LengthBound:
    """``n pi/3`` with ``n`` the crossings of a circle or the strand's multiplicity.

    The crossing-circle bound is strict.
    """
    if not coords.nontrivial or coords.w_coeff is None:
        raise SlopeError("trivial slope has no length bound")
    if coords.provenance == CROSSING_CIRCLE:
        n = abs(coords.s_coeff)
        return LengthBound(coords.cusp, "combinatorial", n, units=2 * n, strict=True)
    n = abs(coords.w_coeff)
    return LengthBound(coords.cusp, "combinatorial", n, units=2 * n, strict=False)


HYPERBOLIKE = "hyperbolike"
HYPERBOLIC = "hyperbolic"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ThresholdVerdict:
    route: str
    status: str
    failing: tuple[int, ...] = ()
    reason: str = ""

    @property
    def certified(self) -> bool:
        return self.status != INCONCLUSIVE

    def to_json(self) -> dict:
        return {"route": self.route, "status": self.status, "failing": list(self.failing),
                "reason": self.reason}


def _check(route, kind, bounds, filled):
    bounds = list(bounds)
    if not bounds:
        raise SlopeError("no filled cusps to check")
    for b in bounds:
        if b.kind != kind:
            raise SlopeError(f"{route} needs {kind} bounds, got {b.kind}")
    if filled is not None:
        missing = sorted(set(filled) - {b.cusp for b in bounds})
        if missing:
            raise SlopeError(f"filled cusps without a bound: {missing}")
    return tuple(b.cusp for b in bounds if not b.exceeds_threshold())


def six_theorem_check(bounds: Iterable[LengthBound], all_cusps_filled: bool,
                      filled: Optional[Sequence[int]] = None) -> ThresholdVerdict:
    """Every slope longer than 6 on every cusp: the filling is hyperbolike."""
    failing = _check("6-theorem", "geometric", bounds, filled)
    if failing:
        return ThresholdVerdict("6-theorem", INCONCLUSIVE, failing,
                                "length bound not certified above 6")
    if not all_cusps_filled:
        return ThresholdVerdict("6-theorem", INCONCLUSIVE, (),
                                "the 6-Theorem as stated needs a slope on every cusp")
    return ThresholdVerdict("6-theorem", HYPERBOLIKE)


def two_pi_check(bounds: Iterable[LengthBound], all_filled: bool,
                 filled: Optional[Sequence[int]] = None) -> ThresholdVerdict:
    """Combinatorial lengths above 2 pi: hyperbolike, or hyperbolic if some cusps stay open."""
    failing = _check("2pi-theorem", "combinatorial", bounds, filled)
    if failing:
        return ThresholdVerdict("2pi-theorem", INCONCLUSIVE, failing,
                                "combinatorial length not certified above 2pi")
    return ThresholdVerdict("2pi-theorem", HYPERBOLIKE if all_filled else HYPERBOLIC)
