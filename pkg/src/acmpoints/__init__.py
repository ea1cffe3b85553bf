"""Hilbert functions, depth and the ACM property for finite sets of points in
P^{n_1} x ... x P^{n_r}.

Factors and point indices are 0-based throughout the library.
"""

from __future__ import annotations

from .depth import AcmVerdict, DepthReport, LinearForm, compute_depth, is_acm
from .hilbert import (
    CoordinateRing,
    delta_screen,
    delta_table,
    hilbert_table,
    hilbert_value,
    quick_non_acm_test,
)
from .linalg import GF, QQ
from .points import (
    Point,
    PointSet,
    PointSetError,
    embed_points,
    ferrers_point_set,
    has_property_star,
    load_point_set,
    star_witness,
    sx_poset,
)
from .separators import minimal_separator, separator_degrees, unique_degree_test

__version__ = "0.1.0"

__all__ = [
    "AcmVerdict",
    "CoordinateRing",
    "DepthReport",
    "GF",
    "LinearForm",
    "Point",
    "PointSet",
    "PointSetError",
    "QQ",
    "compute_depth",
    "delta_screen",
    "delta_table",
    "embed_points",
    "ferrers_point_set",
    "has_property_star",
    "hilbert_table",
    "hilbert_value",
    "is_acm",
    "load_point_set",
    "minimal_separator",
    "quick_non_acm_test",
    "separator_degrees",
    "star_witness",
    "sx_poset",
    "unique_degree_test",
]
