"""Exact computation of the localized EKR sum over uniform set families."""

from fractions import Fraction

from .exact import binomial, weight, render_decimal
from .setfamily import (
    Family,
    FamilyFormatError,
    GroundParams,
    canonical_form,
    common_core,
    is_cross_t_intersecting,
    is_t_intersecting,
    is_trivial_t_intersecting,
    parse_family,
    serialize_family,
)
from .phi import (
    LayerProfile,
    PhiReport,
    borg_sum,
    layer_profile,
    min_intersection,
    phi_direct,
    phi_report,
    phi_telescoped,
    reduce_core,
)
from .constructions import ak_frontier, full_level, h1, h2, j_family, star, build

__all__ = [
    "Fraction",
    "binomial",
    "weight",
    "render_decimal",
    "Family",
    "FamilyFormatError",
    "GroundParams",
    "canonical_form",
    "common_core",
    "is_cross_t_intersecting",
    "is_t_intersecting",
    "is_trivial_t_intersecting",
    "parse_family",
    "serialize_family",
    "LayerProfile",
    "PhiReport",
    "borg_sum",
    "layer_profile",
    "min_intersection",
    "phi_direct",
    "phi_report",
    "phi_telescoped",
    "reduce_core",
    "ak_frontier",
    "full_level",
    "h1",
    "h2",
    "j_family",
    "star",
    "build",
]
