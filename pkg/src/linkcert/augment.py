"""Augmented links: one crossing circle around every twist region.

A region with ``a`` crossings keeps ``a mod 2`` of them as a half twist and
gives up ``2|s|`` of them as full twists, where ``s`` carries the sign of
the region's handedness.  Filling the crossing circle along slope ``1/s``
restores the removed twists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagram import LinkDiagram, PreconditionError, TwistRegion


class AugmentError(PreconditionError):
    pass


@dataclass(frozen=True)
class CrossingCircle:
    region: int
    crossings: int  # a_i
    handedness: int  # sigma_i
    half_twist: int  # 0 or sigma_i
    removed_full_twists: int  # s_i

    @property
    def recovery_slope(self) -> Optional[Fraction]:
        """Filling slope ``1/s``; ``None`` when nothing was removed."""
        if self.removed_full_twists == 0:
            return None
        return Fraction(1, self.removed_full_twists)

    def to_json(self) -> dict:
        return {
            "region": self.region,
            "a": self.crossings,
            "sigma": self.handedness,
            "s": self.removed_full_twists,
            "half_twist": self.half_twist,
        }


@dataclass(frozen=True)
class AugmentedLink:
    base: LinkDiagram
    regions: tuple[TwistRegion, ...]
    circles: tuple[CrossingCircle, ...]

    @property
    def t(self) -> int:
        return len(self.circles)

    @property
    def flat(self) -> bool:
        return all(c.half_twist == 0 for c in self.circles)

    @property
    def flat_crossings(self) -> int:
        """Crossings among knot strands left in the flat view (always 0)."""
        return 0

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "circles": [c.to_json() for c in self.circles]}


def crossing_circle(region: TwistRegion) -> CrossingCircle:
    a, sigma = region.count, region.handedness
    half = sigma if a % 2 else 0
    return CrossingCircle(region.index, a, sigma, half, sigma * (a // 2))


def augment(d: LinkDiagram) -> AugmentedLink:
    d.require_connected()
    regions = d.twist_regions
    if len(regions) < 2:
        raise AugmentError(
            "closed 2-braid or single twist region: construction hypotheses fail"
        )
    prime = d.is_prime()
    if not prime:
        raise AugmentError("diagram is not prime")
    reduced = d.is_twist_reduced()
    if not reduced:
        raise AugmentError("diagram is not twist-reduced")
    circles = tuple(crossing_circle(r) for r in regions)
    return AugmentedLink(d, tuple(regions), circles)


def recovery_slopes(a: AugmentedLink) -> list[tuple[int, Optional[Fraction]]]:
    """``(circle, 1/s)`` pairs; ``None`` marks a circle needing no filling."""
    return [(c.region, c.recovery_slope) for c in a.circles]
