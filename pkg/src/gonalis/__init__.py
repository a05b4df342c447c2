"""Gonal maps, Betti tables and radical parametrizations of algebraic curves."""
from .curvein import (CanonicalModel, HyperellipticModel, PlaneModel, Singularity, canonical_ideal,
                      map_degree, parse_curve_text)
from .fields import GF, QQ
from .groebner import groebner_basis, hilbert_data
from .invariants import clifford_window, gonality_upper_bound, plane_gonality_bounds
from .lie import lie_algebra_of, lie_report, sl2_summand
from .poly import Poly, PolyRing
from .radical import radical_parametrization, radparam, validate
from .resolution import BettiTable, betti_table, betti_via_koszul, linear_strand, minimal_free_resolution
from .scrollar import GonalMap, gonal_map, goneric_pipeline, scroll_check, scrollar_search, strand_data
from .tetragonal import classify_tetragonal, tetragonal_report

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "CanonicalModel", "GF", "GonalMap", "HyperellipticModel", "PlaneModel", "Poly",
    "PolyRing", "QQ", "Singularity", "betti_table", "betti_via_koszul", "canonical_ideal",
    "classify_tetragonal", "clifford_window", "gonal_map", "goneric_pipeline", "gonality_upper_bound",
    "groebner_basis", "hilbert_data", "lie_algebra_of", "lie_report", "linear_strand", "map_degree",
    "minimal_free_resolution", "parse_curve_text", "plane_gonality_bounds", "radical_parametrization",
    "radparam", "scroll_check", "scrollar_search", "sl2_summand", "strand_data", "tetragonal_report",
    "validate",
]
