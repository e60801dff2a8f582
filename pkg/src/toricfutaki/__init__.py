"""Exact anticanonical polytopes, barycentres and generalized Futaki
invariants of almost Fano toric varieties."""

from .exact import det, primitive, solve
from .fans import Cone, Fan, fan_from_json, fan_to_json, is_complete, validate_fan
from .fano import (
    GorensteinData,
    TCartierDivisor,
    anticanonical_polytope,
    divisor_polytope,
    fan_from_polar_vertices,
    gorenstein_data,
    is_almost_fano,
    lattice_points,
)
from .geometry import MomentData, VPolytope, convex_hull, mc_moments, moments, triangulate
from .futaki import (
    EmbeddingData,
    TorusField,
    analyze_fan,
    build_embedding,
    f_eval,
    futaki_real,
    gradient_selftest,
    moment_map,
)
from . import catalog

__version__ = "0.1.0"

__all__ = [
    "Cone",
    "EmbeddingData",
    "Fan",
    "GorensteinData",
    "MomentData",
    "TCartierDivisor",
    "TorusField",
    "VPolytope",
    "analyze_fan",
    "anticanonical_polytope",
    "build_embedding",
    "catalog",
    "convex_hull",
    "det",
    "divisor_polytope",
    "f_eval",
    "fan_from_json",
    "fan_from_polar_vertices",
    "fan_to_json",
    "futaki_real",
    "gorenstein_data",
    "gradient_selftest",
    "is_almost_fano",
    "is_complete",
    "lattice_points",
    "mc_moments",
    "moment_map",
    "moments",
    "primitive",
    "solve",
    "triangulate",
    "validate_fan",
]
