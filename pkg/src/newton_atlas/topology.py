"""Topology of fibres at infinity from the Newton polygon.

For a fibre ``f = xi`` satisfying the hypotheses (dimension two,
non-degeneracy, rectangle condition) the compactified fibre has genus equal
to the number of interior lattice points, and one puncture for every root of
every edge polynomial on the sides facing infinity.  At a puncture on a side
with primitive normal ``(alpha, beta)`` through ``(u0, v0)`` the Hamiltonian
field has a pole of order ``k = (u0-1)alpha + (v0-1)beta - 1`` (a zero when
``k < 0``); the flat completion metric has cone angle ``2 pi (k + 1)``.

Genus zero
----------
The index of the field at a puncture is ``-k`` and the indices sum to
``2 - 2 genus``.  A genus-zero fibre is classified as a plane when it has
one puncture (a single index-2 zero) and as a cylinder when it has two (two
index-1 zeros).  Any other puncture count raises :class:`ReportError`
rather than guessing.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .gaussian import GaussianRational
from .lattice import (
    ConditionResult,
    Edge,
    NewtonPolygon,
    check_condition_i,
    interior_lattice_count,
    newton_polygon,
    relaxed_polygon,
    signed_area_twice,
)
from .nondegeneracy import (
    NondegeneracyVerdict,
    certify_nondegenerate,
    edge_polynomial,
    generic_xi_check,
    normalize_mode,
)
from .poly import SparsePolynomial
from .roots import polish_roots, polynomial_roots

GENERIC = "generic"

INCOMPLETE = "incomplete-compact-completion"
PLANE = "complete-plane"
CYLINDER = "complete-cylinder"


class HypothesisError(Exception):
    """One or more hypotheses of the analysis fail.

    Attributes
    ----------
    violations : list of dict
        One entry per failed hypothesis with keys ``condition``, ``message``
        and ``witness``.
    """

    def __init__(self, violations: List[dict], polygon: Optional[NewtonPolygon] = None,
                 verdict: Optional[NondegeneracyVerdict] = None):
        self.violations = violations
        self.polygon = polygon
        self.verdict = verdict
        super().__init__("; ".join(v["message"] for v in violations))

    def as_dict(self) -> dict:
        out = {"violations": self.violations}
        if self.polygon is not None:
            out["polygon"] = self.polygon.as_dict()
        if self.verdict is not None:
            out["nondegeneracy"] = self.verdict.as_dict()
        return out


class ReportError(RuntimeError):
    """The assembled data contradicts the classification rules."""


class KappaUndefined(ValueError):
    """The leading chart coefficient is not given by a closed form here."""


@dataclass(frozen=True)
class PunctureRecord:
    """One point at infinity of the fibre.

    Attributes
    ----------
    edge : Edge
        Side of the polygon facing infinity.
    root_index : int
        ``n`` in ``1..n_Gamma``.
    root : complex
        The root of the edge polynomial attached to this puncture.
    pole_order : int
        ``k``; negative values are zeros of order ``-k``.
    cone_angle_over_2pi : int
        ``k + 1``.
    kappa : complex or None
        Leading coefficient of the pulled-back area form, when defined.
    """

    edge: Edge
    root_index: int
    root: complex
    pole_order: int
    cone_angle_over_2pi: int
    kappa: Optional[complex]

    @property
    def index(self) -> int:
        """Index of the Hamiltonian field at the puncture, ``-pole_order``."""
        return -self.pole_order


@dataclass(frozen=True)
class PickIdentity:
    lhs: int
    rhs: int
    area_twice: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass
class FiberTopologyReport:
    """Everything derived about the fibre ``f = xi``."""

    polynomial: str
    xi: Union[complex, str]
    polygon: NewtonPolygon
    genus: int
    punctures: List[PunctureRecord]
    n_mu: int
    completeness: str
    arithmetic_genus: int
    pick_identity: PickIdentity
    connectivity_claim: str
    nondegeneracy: NondegeneracyVerdict
    condition_i: ConditionResult
    relaxed_condition_only: bool = False
    warnings: List[str] = field(default_factory=list)
    exceptional_xi: List[complex] = field(default_factory=list)

    @property
    def polygon_dimension(self) -> int:
        return self.polygon.dimension

    @property
    def pole_orders(self) -> List[int]:
        return [p.pole_order for p in self.punctures]


def pole_order(edge: Edge, point: Optional[Tuple[int, int]] = None) -> int:
    """``(u0-1)alpha + (v0-1)beta - 1`` at ``point`` (default: the edge start)."""
    u0, v0 = point if point is not None else edge.start
    a, b = edge.normal
    return (u0 - 1) * a + (v0 - 1) * b - 1


def compute_kappa(edge: Edge, f: SparsePolynomial, root_index: int) -> complex:
    """Leading coefficient of the pulled-back area form at a puncture.

    It equals one unless ``(1, 1)`` lies on the edge.  On the side from
    ``(2, 0)`` to ``(0, 2)`` it is ``+D**-0.5`` for ``root_index = 2`` and
    ``-D**-0.5`` for ``root_index = 1``, where
    ``D = a11**2 - 4 a20 a02`` and the square root is principal.

    Raises
    ------
    KappaUndefined
        If ``(1, 1)`` lies on a different edge.
    ValueError
        If ``D`` vanishes or ``root_index`` is out of range.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> f = parse_polynomial("z^2+w^2-1")
    >>> e = [e for e in newton_polygon(f).edges if e.normal == (1, 1)][0]
    >>> compute_kappa(e, f, 2)
    -0.5j
    """
    if not 1 <= root_index <= edge.n_gamma:
        raise ValueError(f"root index {root_index} outside 1..{edge.n_gamma}")
    if (1, 1) not in edge.lattice_points():
        return 1 + 0j
    if {edge.start, edge.end} != {(2, 0), (0, 2)}:
        raise KappaUndefined(f"(1,1) lies on edge {edge.start}-{edge.end}")
    a11, a20, a02 = f.coefficient(1, 1), f.coefficient(2, 0), f.coefficient(0, 2)
    disc = a11 * a11 - a20 * a02 * 4
    if not disc:
        raise ValueError("vanishing discriminant on the (2,0)-(0,2) edge")
    root = cmath.sqrt(complex(disc))
    return (1 / root) if root_index == 2 else (-1 / root)


def edge_roots(f: SparsePolynomial, edge: Edge) -> List[complex]:
    """Roots of the edge polynomial in puncture order (``root_index - 1``).

    On the ``(2,0)-(0,2)`` side, index 1 is ``(-a11 - sqrt D)/(2 a02)`` and
    index 2 is ``(-a11 + sqrt D)/(2 a02)``, so that ``P'(root) = -+ sqrt D``
    matches the sign of the chart coefficient.  Elsewhere the roots are
    sorted by real then imaginary part.
    """
    P = edge_polynomial(f, edge).poly
    if P.degree == 2 and {edge.start, edge.end} == {(2, 0), (0, 2)}:
        c0, c1, c2 = (complex(c) for c in P.coeffs)
        s = cmath.sqrt(c1 * c1 - 4 * c0 * c2)
        if edge.start == (2, 0):
            return [(-c1 - s) / (2 * c2), (-c1 + s) / (2 * c2)]
    approx = polynomial_roots(P.to_complex())
    return [complex(r.value) for r in polish_roots(P.coeffs, approx, dps=30)]


def _coerce_xi(xi) -> Union[GaussianRational, str]:
    if isinstance(xi, str):
        if xi == GENERIC:
            return GENERIC
        from .parser import parse_polynomial

        p = parse_polynomial(xi)
        if not p.is_constant():
            raise ValueError(f"xi must be a constant, got {xi!r}")
        return p.coefficient(0, 0)
    if isinstance(xi, GaussianRational):
        return xi
    if isinstance(xi, complex):
        return GaussianRational(Fraction(xi.real), Fraction(xi.imag))
    return GaussianRational.coerce(xi)


def _puncture_chain(P: NewtonPolygon) -> List[Edge]:
    """Sides facing infinity as one counterclockwise run."""
    edges = list(P.edges)
    flags = [not e.on_axis and (e.normal[0] > 0 or e.normal[1] > 0) for e in edges]
    if all(flags):
        return edges
    start = next(k for k in range(len(edges)) if flags[k] and not flags[k - 1]) if any(flags) else 0
    rotated = edges[start:] + edges[:start]
    chain = []
    for e in rotated:
        if not (not e.on_axis and (e.normal[0] > 0 or e.normal[1] > 0)):
            break
        chain.append(e)
    return chain


def pick_identity(P: NewtonPolygon, reference: Optional[NewtonPolygon] = None) -> PickIdentity:
    """``n_mu - 2S`` against ``2 - 2 B+`` with exact integers.

    ``2S`` is the signed doubled area of the fan from ``(1, 1)`` over the
    sides facing infinity.  The sign matters: when ``(1, 1)`` lies outside
    the polygon the fan has negative orientation.  ``B+`` is taken from
    ``reference`` (default ``P``).
    """
    chain = _puncture_chain(P)
    n_mu = sum(e.n_gamma for e in chain)
    if chain:
        cycle = [(1, 1)] + [e.start for e in chain] + [chain[-1].end]
        area2 = signed_area_twice(cycle)
    else:
        area2 = 0
    ref = reference if reference is not None else P
    return PickIdentity(n_mu - area2, 2 - 2 * interior_lattice_count(ref), area2)


def arithmetic_genus(P: NewtonPolygon) -> int:
    """``1 - (-1)**dim * B+`` for a polygon of any dimension.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> arithmetic_genus(newton_polygon(parse_polynomial("z^4-1")))
    4
    """
    return 1 - (-1) ** P.dimension * interior_lattice_count(P)


def classify(genus: int, n_mu: int) -> str:
    """Completeness class of the flat completion."""
    if genus >= 1:
        return INCOMPLETE
    if n_mu == 1:
        return PLANE
    if n_mu == 2:
        return CYLINDER
    raise ReportError(f"genus 0 with {n_mu} punctures fits neither a plane nor a cylinder")


_GENERIC_PROBES = [GaussianRational(Fraction(k, 7), Fraction(3, 11)) for k in (5, 9, 13, 17, 23)]


def analyze_fiber(f: SparsePolynomial, xi=GENERIC, mode: str = "relaxed") -> FiberTopologyReport:
    """Assemble the topology report for the fibre ``f = xi``.

    Parameters
    ----------
    f : SparsePolynomial
        Polynomial with Gaussian-rational coefficients.
    xi : GaussianRational, number, str
        Fibre value, or ``"generic"`` for a symbolic value that avoids the
        finitely many exceptional ones.
    mode : {'relaxed', 'full'}
        Non-degeneracy mode used for the hypothesis check.

    Raises
    ------
    HypothesisError
        Listing every failed hypothesis with a witness.
    """
    mode = normalize_mode(mode)
    xi_val = _coerce_xi(xi)
    warnings: List[str] = []
    exceptional: List[complex] = []
    if xi_val == GENERIC:
        gen = generic_xi_check(f, mode)
        exceptional = list(gen.exceptional)
        if mode == "full" and not f.is_constant():
            from .critical import critical_values

            exceptional.extend(v for v in critical_values(f).values
                               if all(abs(v - e) > 1e-9 for e in exceptional))
        probe = next(p for p in _GENERIC_PROBES
                     if all(abs(complex(p) - e) > 1e-6 for e in exceptional))
        F = f - SparsePolynomial.constant(probe)
        if gen.always_degenerate:
            warnings.append("an edge through the origin is degenerate for every xi")
    else:
        F = f - SparsePolynomial.constant(xi_val)
        gen = None
    if F.is_zero():
        raise HypothesisError([{"condition": "nonzero", "message": "f - xi is identically zero", "witness": None}])
    P = newton_polygon(F)
    violations = []
    if P.dimension != 2:
        violations.append({"condition": "dimension", "message": f"Newton polygon has dimension {P.dimension}",
                           "witness": [list(v) for v in P.vertices]})
    verdict = certify_nondegenerate(F, mode)
    if gen is not None and gen.always_degenerate:
        violations.append({"condition": "nondegenerate", "message": "degenerate for every xi", "witness": None})
    if not verdict.overall:
        bad = verdict.failing()[0]
        violations.append({"condition": "nondegenerate", "message": f"degenerate on {bad.face.describe()}",
                           "witness": {"face": bad.face.describe(), **(bad.witness or {})}})
    cond = check_condition_i(P)
    relaxed_only = False
    reference = P
    if not cond.holds:
        P_star = relaxed_polygon(P) if P.dimension == 2 else None
        if P_star is not None and P_star.dimension == 2 and check_condition_i(P_star).holds:
            relaxed_only = True
            reference = P_star
            warnings.append("rectangle condition holds only for the relaxed polygon")
        else:
            violations.append({"condition": "condition-i",
                               "message": f"rectangle condition fails at vertex {cond.witness}",
                               "witness": {"vertex": list(cond.witness), "missing": list(cond.missing)}})
    if violations:
        raise HypothesisError(violations, P, verdict)

    genus = interior_lattice_count(P)
    punctures: List[PunctureRecord] = []
    for e in P.puncture_edges():
        k = pole_order(e)
        assert k == pole_order(e, e.end), "pole order must not depend on the edge point"
        roots = edge_roots(F, e)
        for n in range(1, e.n_gamma + 1):
            try:
                kappa = compute_kappa(e, F, n)
            except KappaUndefined:
                kappa = None
            punctures.append(PunctureRecord(e, n, roots[n - 1], k, k + 1, kappa))
    n_mu = len(punctures)
    pick = pick_identity(P, reference)
    if relaxed_only and interior_lattice_count(reference) != genus:
        warnings.append("interior point count differs between the polygon and its relaxed hull")
    if (0, 0) not in F.terms and xi_val != GENERIC:
        warnings.append("f - xi has zero constant term; arithmetic genus formula is outside its stated range")
    arith = arithmetic_genus(P)
    completeness = classify(genus, n_mu)
    claim = "asserted" if (verdict.overall and verdict.mode == "full" and not relaxed_only) else "not-asserted"
    from .parser import render

    return FiberTopologyReport(
        polynomial=render(f),
        xi=GENERIC if xi_val == GENERIC else complex(xi_val),
        polygon=P,
        genus=genus,
        punctures=punctures,
        n_mu=n_mu,
        completeness=completeness,
        arithmetic_genus=arith,
        pick_identity=pick,
        connectivity_claim=claim,
        nondegeneracy=verdict,
        condition_i=cond,
        relaxed_condition_only=relaxed_only,
        warnings=warnings,
        exceptional_xi=exceptional,
    )


@dataclass(frozen=True)
class IndexSum:
    holds: bool
    lhs: int
    rhs: int


def index_sum_check(report: FiberTopologyReport) -> IndexSum:
    """Compare the sum of puncture indices ``(1-u0)alpha + (1-v0)beta + 1``
    with ``2 - 2 genus``.

    Raises
    ------
    ValueError
        For reports of polygon dimension below two.
    """
    if report.polygon_dimension != 2:
        raise ValueError("index sum is defined for two-dimensional polygons")
    lhs = 0
    for p in report.punctures:
        (u0, v0), (a, b) = p.edge.start, p.edge.normal
        lhs += (1 - u0) * a + (1 - v0) * b + 1
    rhs = 2 - 2 * report.genus
    return IndexSum(lhs == rhs, lhs, rhs)
