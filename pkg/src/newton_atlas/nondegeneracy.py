"""Truncations, edge polynomials and non-degeneracy certificates.

A polynomial is non-degenerate with respect to its Newton polygon when, for
every covector ``eta``, the truncation ``f^eta`` has no zero in the torus
``(C*)^2`` at which its differential also vanishes.  Only finitely many faces
exist, so certification loops over vertices, edges and the whole polygon.

Edge faces reduce to square-freeness
------------------------------------
Let the edge start at ``(u0, v0)`` with primitive normal ``(a, b)`` and
enumerate its lattice points as ``(u0 - n b, v0 + n a)``.  Then

    f^eta(z, w) = z^u0 w^v0 P(w^a / z^b),   P(y) = sum_n c_n y^n.

On the torus the monomial prefactor is a unit and ``y = w^a z^-b`` is a
submersion, so ``f^eta = d f^eta = 0`` at a torus point exactly when
``P(y) = P'(y) = 0`` at the corresponding ``y``.  Because the end
coefficients ``c_0`` and ``c_n`` are nonzero, every root of ``P`` is nonzero
and is attained on the torus.  Hence the face passes iff ``P`` is
square-free.  Vertex faces are single monomials and always pass.

The whole polygon (``eta = 0``)
-------------------------------
In full mode the system ``f = f_z = f_w = 0`` must have no torus solution.
With ``g = gcd(f_z, f_w)``: a common non-monomial factor of ``f`` and ``g``
is a curve of torus solutions (a certified failure).  Otherwise ``f`` is a
nonzero constant on every component of ``g = 0``, so only the finite system
``p = q = 0`` for the coprime cofactors remains.  An exact resultant filter
settles most inputs; surviving candidates are refined at increasing
precision and either excluded, reported as witnesses, or declared
inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import mpmath

from .critical import curve_points, finite_solutions, mp_evaluate, mp_scale, split_critical_locus
from .gaussian import GaussianRational
from .lattice import Edge, Face, NewtonPolygon, face_for_covector, newton_polygon
from .poly import (
    PolynomialError,
    SparsePolynomial,
    UnivariatePolynomial,
    bivariate_gcd,
    discriminant_in,
    repeated_roots_factor,
    resultant,
    square_free_part,
    univariate_gcd,
)
from .roots import polish_roots, polynomial_roots

FULL = "full"
RELAXED = "positive-coordinate-only"
_MODE_ALIASES = {"full": FULL, "relaxed": RELAXED, "positive-coordinate-only": RELAXED}


class InconclusiveCertification(RuntimeError):
    """A torus candidate could be neither confirmed nor excluded."""

    def __init__(self, message: str, candidate):
        super().__init__(message)
        self.candidate = candidate


def normalize_mode(mode: str) -> str:
    try:
        return _MODE_ALIASES[mode]
    except KeyError:
        raise ValueError(f"unknown non-degeneracy mode {mode!r}") from None


def truncate(f: SparsePolynomial, eta: Tuple[int, int]) -> SparsePolynomial:
    """Terms of ``f`` supported on the face maximising ``<eta, .>``.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial, render
    >>> render(truncate(parse_polynomial("z^2+w^2+2*z*w+w"), (1, 1)))
    'z^2 + 2*z*w + w^2'
    """
    if f.is_zero():
        raise PolynomialError("truncation of the zero polynomial")
    a, b = eta
    top = max(a * l + b * m for l, m in f.terms)
    return SparsePolynomial({e: c for e, c in f.terms.items() if a * e[0] + b * e[1] == top})


@dataclass(frozen=True)
class EdgePolynomial:
    """``P(y) = sum_n c_n y^n`` read along an edge from its initial vertex."""

    edge: Edge
    poly: UnivariatePolynomial

    @property
    def degree(self) -> int:
        return self.poly.degree


def edge_polynomial(f: SparsePolynomial, edge: Edge) -> EdgePolynomial:
    """Edge polynomial with ``c_n = a[u0 - n*beta, v0 + n*alpha]``.

    Raises
    ------
    PolynomialError
        If an endpoint coefficient vanishes (the edge is not a side of the
        Newton polygon of ``f``).

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> f = parse_polynomial("z^3+w^3-1")
    >>> e = [e for e in newton_polygon(f).edges if e.normal == (1, 1)][0]
    >>> [str(c) for c in edge_polynomial(f, e).poly.coeffs]
    ['1', '0', '0', '1']
    """
    coeffs = [f.coefficient(*p) for p in edge.lattice_points()]
    if not coeffs[0] or not coeffs[-1]:
        raise PolynomialError(f"edge {edge.start}-{edge.end} is not a side of the Newton polygon")
    return EdgePolynomial(edge, UnivariatePolynomial(coeffs))


@dataclass
class FaceReport:
    """Verdict for one face.

    ``status`` is ``'pass'``, ``'fail'`` or ``'inconclusive'``; ``witness``
    is a JSON-ready dict or ``None``.
    """

    face: Face
    covector: Optional[Tuple[int, int]]
    status: str
    witness: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict:
        return {
            "face": self.face.describe(),
            "kind": self.face.kind,
            "vertices": [list(v) for v in self.face.vertices],
            "covector": list(self.covector) if self.covector is not None else None,
            "status": self.status,
            "witness": self.witness,
        }


@dataclass
class NondegeneracyVerdict:
    """All face reports and the overall verdict (true iff every face passes)."""

    mode: str
    face_reports: List[FaceReport] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.face_reports)

    def failing(self) -> List[FaceReport]:
        return [r for r in self.face_reports if not r.passed]

    def as_dict(self) -> dict:
        return {
            "overall": self.overall,
            "mode": self.mode,
            "faces": [r.as_dict() for r in self.face_reports],
        }


def _complex_pair(c: complex) -> List[float]:
    return [float(c.real), float(c.imag)]


def _edge_report(f: SparsePolynomial, edge: Edge) -> FaceReport:
    ep = edge_polynomial(f, edge)
    face = Face("edge", (edge.start, edge.end), edge)
    rep = repeated_roots_factor(ep.poly)
    if rep.degree == 0:
        return FaceReport(face, edge.normal, "pass")
    distinct = square_free_part(rep)
    roots = [complex(r.value) for r in polish_roots(distinct.coeffs, polynomial_roots(distinct.to_complex()))]
    witness = {
        "type": "repeated-root",
        "edge_polynomial": [str(c) for c in ep.poly.coeffs],
        "gcd_with_derivative": [str(c) for c in rep.coeffs],
        "repeated_roots": [_complex_pair(r) for r in roots],
    }
    return FaceReport(face, edge.normal, "fail", witness)


def _segment_face(P: NewtonPolygon) -> Face:
    a, b = P.vertices
    dx, dy = b[0] - a[0], b[1] - a[1]
    eta = (dy, -dx)
    if eta[0] <= 0 and eta[1] <= 0:
        eta = (-eta[0], -eta[1])
    return face_for_covector(P, eta)


def _torus_point_on(h: SparsePolynomial, dps: int):
    """Some point of ``h = 0`` with both coordinates nonzero."""
    for z, w in curve_points(h, dps):
        if abs(z) > 1e-6 and abs(w) > 1e-6:
            return z, w
    return None


def _whole_polygon_report(f: SparsePolynomial, P: NewtonPolygon, dps_ladder=(30, 80)) -> FaceReport:
    face = Face("polygon", P.vertices)
    if f.is_constant():
        return FaceReport(face, (0, 0), "pass")
    g, p, q = split_critical_locus(f)
    if not g.is_constant():
        h = bivariate_gcd(f, g).strip_monomial()
        if not h.is_constant():
            from .parser import render

            pt = _torus_point_on(h, dps_ladder[0])
            witness = {"type": "singular-curve", "factor": render(h)}
            if pt is not None:
                witness["point"] = [_complex_pair(complex(pt[0])), _complex_pair(complex(pt[1]))]
            return FaceReport(face, (0, 0), "fail", witness)
    if p.is_zero() or q.is_zero() or p.is_constant() or q.is_constant():
        return FaceReport(face, (0, 0), "pass", {"type": "exact", "reason": "no isolated critical points"})
    # exact filter: a torus solution has z != 0 and is a common root of these
    filt: Optional[UnivariatePolynomial] = None
    for a, b in ((p, q), (f, p), (f, q)):
        try:
            r = resultant(a, b, eliminate="w")
        except PolynomialError:
            continue
        if r.is_zero():
            continue
        u = r.to_univariate("z")
        filt = u if filt is None else univariate_gcd(filt, u)
    if filt is not None:
        filt = filt.shift_down(filt.trailing_zero_order())
        if filt.degree <= 0:
            return FaceReport(face, (0, 0), "pass", {"type": "exact", "reason": "resultant filter is constant"})
    pending = None
    for dps in dps_ladder:
        with mpmath.workdps(dps):
            pending = None
            tiny = mpmath.mpf(10) ** (-(dps // 2))
            for z, w in finite_solutions(p, q, dps):
                if abs(z) < tiny or abs(w) < tiny:
                    continue
                rel = abs(mp_evaluate(f, z, w)) / max(mp_scale(f, z, w), 1)
                if rel <= tiny:
                    return FaceReport(face, (0, 0), "fail", {
                        "type": "torus-singular-point",
                        "point": [_complex_pair(complex(z)), _complex_pair(complex(w))],
                        "residual": float(rel),
                        "digits": dps,
                    })
                if rel <= mpmath.mpf("1e-8"):
                    pending = (complex(z), complex(w))
        if pending is None:
            return FaceReport(face, (0, 0), "pass", {"type": "numeric-exclusion", "digits": dps})
    raise InconclusiveCertification("torus critical candidate could not be excluded", pending)


def certify_nondegenerate(f: SparsePolynomial, mode: str = FULL) -> NondegeneracyVerdict:
    """Certify non-degeneracy of ``f`` face by face.

    Parameters
    ----------
    f : SparsePolynomial
        Nonzero polynomial with Gaussian-rational coefficients.
    mode : {'full', 'relaxed', 'positive-coordinate-only'}
        ``'full'`` checks every covector including ``eta = 0``; the relaxed
        mode keeps only covectors with at least one positive coordinate.

    Returns
    -------
    NondegeneracyVerdict
        Vertex reports first, then edges in counterclockwise order, then the
        whole polygon (full mode only).

    Raises
    ------
    InconclusiveCertification
        If a torus candidate survives the precision ladder.
    """
    if f.is_zero():
        raise PolynomialError("non-degeneracy of the zero polynomial")
    mode = normalize_mode(mode)
    P = newton_polygon(f)
    verdict = NondegeneracyVerdict(mode)
    for v in P.vertices:
        verdict.face_reports.append(FaceReport(Face("vertex", (v,)), None, "pass"))
    if P.dimension == 2:
        for e in P.edges:
            if mode == RELAXED and not (e.normal[0] > 0 or e.normal[1] > 0):
                continue
            verdict.face_reports.append(_edge_report(f, e))
        if mode == FULL:
            verdict.face_reports.append(_whole_polygon_report(f, P))
    elif P.dimension == 1:
        seg = _segment_face(P)
        rep = _edge_report(f, seg.edge)
        verdict.face_reports.append(rep)
        if mode == FULL:
            # the whole segment is the eta = 0 face; same truncation, same verdict
            verdict.face_reports.append(FaceReport(Face("polygon", P.vertices), (0, 0), rep.status, rep.witness))
    elif mode == FULL:
        verdict.face_reports.append(FaceReport(Face("polygon", P.vertices), (0, 0), "pass"))
    return verdict


@dataclass
class GenericXiCheck:
    """Edges through the origin for ``f - xi`` with symbolic ``xi``.

    ``exceptional`` lists the finitely many ``xi`` at which some such edge
    polynomial acquires a repeated root, together with ``xi = a00`` where the
    origin leaves the support.  ``always_degenerate`` is set if an edge
    polynomial is degenerate for every ``xi``.
    """

    exceptional: List[complex] = field(default_factory=list)
    always_degenerate: bool = False
    edges_checked: int = 0


def generic_xi_check(f: SparsePolynomial, mode: str = FULL) -> GenericXiCheck:
    """Exceptional fibre values coming from edges that contain the origin.

    The polygon is built from the support of ``f`` with ``(0, 0)`` added.  An
    edge through the origin has support value zero, so its normal has no
    positive coordinate; such edges only matter in full mode.  For each of
    them the edge polynomial is a polynomial ``P(y, xi)`` whose discriminant
    in ``y`` is a polynomial in ``xi``; its roots are reported.
    """
    mode = normalize_mode(mode)
    a00 = f.coefficient(0, 0)
    support = set(f.terms) | {(0, 0)}
    P = NewtonPolygon.from_points(support)
    out = GenericXiCheck()
    bad: List[complex] = [complex(a00)]
    edges = list(P.edges)
    if P.dimension == 1:
        edges = [_segment_face(P).edge]
    for e in edges:
        if mode == RELAXED and not (e.normal[0] > 0 or e.normal[1] > 0):
            continue
        pts = e.lattice_points()
        if (0, 0) not in pts:
            continue
        out.edges_checked += 1
        # P(y, xi) stored in the (z, w) slots of a SparsePolynomial
        terms = {}
        for n, pt in enumerate(pts):
            c = f.coefficient(*pt)
            if pt == (0, 0):
                terms[(n, 0)] = c
                terms[(n, 1)] = GaussianRational(-1)
            elif c:
                terms[(n, 0)] = c
        Pyx = SparsePolynomial(terms)
        if Pyx.degree("z") <= 1:
            continue
        disc = discriminant_in(Pyx, "z")
        if disc.is_zero():
            out.always_degenerate = True
            continue
        d = disc.to_univariate("w")
        if d.degree >= 1:
            bad.extend(polynomial_roots(d.to_complex()))
    seen: List[complex] = []
    for b in bad:
        if not any(abs(b - s) <= 1e-9 for s in seen):
            seen.append(b)
    out.exceptional = sorted(seen, key=lambda c: (round(c.real, 9), round(c.imag, 9)))
    return out


# re-exported so that callers can import critical values alongside certificates
from .critical import CriticalValues, critical_values  # noqa: E402,F401
