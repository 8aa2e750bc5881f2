"""Newton polygons, non-degeneracy certificates, fibre topology, charts at
infinity and Hamiltonian flows for polynomials in two complex variables."""

from .gaussian import GaussianRational
from .poly import SparsePolynomial, UnivariatePolynomial, is_square_free, resultant
from .parser import ParseError, parse_polynomial, render
from .lattice import Edge, NewtonPolygon, check_condition_i, interior_lattice_count, newton_polygon
from .nondegeneracy import certify_nondegenerate, critical_values, edge_polynomial
from .topology import FiberTopologyReport, HypothesisError, analyze_fiber, index_sum_check
from .report import emit_report

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "FiberTopologyReport",
    "GaussianRational",
    "HypothesisError",
    "NewtonPolygon",
    "ParseError",
    "SparsePolynomial",
    "UnivariatePolynomial",
    "analyze_fiber",
    "certify_nondegenerate",
    "check_condition_i",
    "critical_values",
    "edge_polynomial",
    "emit_report",
    "index_sum_check",
    "interior_lattice_count",
    "is_square_free",
    "newton_polygon",
    "parse_polynomial",
    "render",
    "resultant",
]
