"""Certificates for hyperbolicity, genus and Dehn fillings read off link diagrams."""

__version__ = "0.1.0"

from .augment import AugmentedLink, CrossingCircle, augment, recovery_slopes
from .certify import (
    Certificate,
    certify,
    certify_hyperbolic,
    certify_no_exceptional,
    certify_partial_filling,
    genus_bound_value,
    genus_lower_bound,
)
from .diagram import LinkDiagram, component_stats, faces, is_prime, is_twist_reduced, twist_regions
from .pdcode import ParseError, parse_diagram, parse_gauss, parse_json, parse_pd
from .polyhedra import CuspTorus, Decomposition, cusp_tori, decompose

__all__ = [
    "AugmentedLink", "Certificate", "CrossingCircle", "CuspTorus", "Decomposition",
    "LinkDiagram", "ParseError", "augment", "certify", "certify_hyperbolic",
    "certify_no_exceptional", "certify_partial_filling", "component_stats", "cusp_tori",
    "decompose", "faces", "genus_bound_value", "genus_lower_bound", "is_prime",
    "is_twist_reduced", "parse_diagram", "parse_gauss", "parse_json", "parse_pd",
    "recovery_slopes", "twist_regions",
]
