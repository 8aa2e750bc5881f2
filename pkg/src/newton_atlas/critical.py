"""Critical points and critical values of bivariate polynomials.

The critical locus ``f_z = f_w = 0`` is split as follows.  With
``g = gcd(f_z, f_w)``, every component of ``g = 0`` is a curve of critical
points on which ``f`` is constant.  The cofactors ``p = f_z / g`` and
``q = f_w / g`` are coprime, so ``p = q = 0`` is finite; its points are found
from the square-free parts of ``Res_w(p, q)`` and ``Res_z(p, q)``, refined in
mpmath, and paired by exact-coefficient residual tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath

from .gaussian import GaussianRational
from .poly import (
    PolynomialError,
    SparsePolynomial,
    UnivariatePolynomial,
    bivariate_gcd,
    exact_divide,
    partial_derivative,
    resultant,
    square_free_part,
)
from .roots import polish_roots, polynomial_roots

# fixed rational lines used to cut critical curves; the first that is not a
# component wins
_CUT_LINES = [
    (GaussianRational(Fraction(3, 7), Fraction(2, 11)), GaussianRational(Fraction(5, 13), Fraction(-1, 3))),
    (GaussianRational(Fraction(-4, 9), Fraction(1, 5)), GaussianRational(Fraction(2, 3), Fraction(3, 17))),
    (GaussianRational(Fraction(7, 5), Fraction(-2, 7)), GaussianRational(Fraction(-1, 6), Fraction(4, 9))),
]


@dataclass(frozen=True)
class CriticalPoint:
    z: complex
    w: complex
    value: complex


@dataclass
class CriticalValues:
    """Result of :func:`critical_values`.

    Attributes
    ----------
    values : list of complex
        Distinct critical values (within the de-duplication radius).
    points : list of CriticalPoint
        Isolated critical points.
    positive_dimensional : bool
        True when ``f_z`` and ``f_w`` share a nonconstant factor, i.e. the
        critical locus contains curves.
    curve_values : list of complex
        Values of ``f`` on the critical curves (``f`` is constant on each).
    curve_factor : str or None
        Text of ``gcd(f_z, f_w)`` when it is nonconstant.
    """

    values: List[complex] = field(default_factory=list)
    points: List[CriticalPoint] = field(default_factory=list)
    positive_dimensional: bool = False
    curve_values: List[complex] = field(default_factory=list)
    curve_factor: Optional[str] = None

    def contains(self, value: complex, radius: float = 1e-8) -> bool:
        return any(abs(v - value) <= radius for v in self.values)


def _mpc(c: GaussianRational) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                      mpmath.mpf(c.im.numerator) / c.im.denominator)


def mp_evaluate(f: SparsePolynomial, z, w):
    """Evaluate ``f`` in mpmath at the current working precision."""
    total = mpmath.mpc(0)
    for (l, m), c in f.terms.items():
        total += _mpc(c) * z ** l * w ** m
    return total


def mp_scale(f: SparsePolynomial, z, w):
    """Sum of absolute term values; the natural yardstick for residuals."""
    return sum((abs(_mpc(c)) * abs(z) ** l * abs(w) ** m for (l, m), c in f.terms.items()), mpmath.mpf(0))


def _roots_hp(p: UnivariatePolynomial, dps: int) -> List[mpmath.mpc]:
    """Roots of the square-free part of ``p`` refined to ``dps`` digits."""
    if p.degree < 1:
        return []
    sf = square_free_part(p)
    if sf.degree < 1:
        return []
    approx = polynomial_roots(sf.to_complex())
    return [r.value for r in polish_roots(sf.coeffs, approx, dps=dps)]


def substitute_line(f: SparsePolynomial, slope: GaussianRational, offset: GaussianRational) -> UnivariatePolynomial:
    """Exact restriction of ``f`` to the line ``w = slope*z + offset``."""
    line = UnivariatePolynomial([offset, slope])
    powers = [UnivariatePolynomial([1])]
    out = UnivariatePolynomial()
    for (l, m), c in sorted(f.terms.items()):
        while len(powers) <= m:
            powers.append(powers[-1] * line)
        out = out + powers[m] * UnivariatePolynomial.monomial(l, c)
    return out


def curve_points(g: SparsePolynomial, dps: int = 30) -> List[Tuple[mpmath.mpc, mpmath.mpc]]:
    """One or more points on every component of the curve ``g = 0``.

    The curve is cut by a fixed generic line; each component meets it.
    """
    for slope, offset in _CUT_LINES:
        u = substitute_line(g, slope, offset)
        if u.is_zero():
            continue
        with mpmath.workdps(dps):
            zs = _roots_hp(u, dps)
            s, o = _mpc(slope), _mpc(offset)
            return [(z, s * z + o) for z in zs]
    raise PolynomialError("could not find a line transverse to the critical curve")


@dataclass
class FiniteSystem:
    """Isolated solutions of ``p = q = 0`` for coprime ``p``, ``q``."""

    points: List[Tuple[mpmath.mpc, mpmath.mpc]]


def _resultant_or_none(p, q, eliminate):
    try:
        return resultant(p, q, eliminate=eliminate)
    except PolynomialError:
        return None


def finite_solutions(p: SparsePolynomial, q: SparsePolynomial, dps: int = 30) -> List[Tuple[mpmath.mpc, mpmath.mpc]]:
    """All common zeros of coprime ``p`` and ``q`` at ``dps`` digits.

    Candidate coordinates are the roots of the square-free parts of the two
    resultants.  A pair is accepted when both residuals fall below
    ``10**(-dps/2)`` relative to the term magnitudes.
    """
    if p.is_zero() or q.is_zero():
        raise PolynomialError("finite_solutions needs nonzero inputs")
    if p.is_constant() or q.is_constant():
        return []
    rz = _resultant_or_none(p, q, "w")
    rw = _resultant_or_none(p, q, "z")
    if rz is None or rw is None:
        # both free of one variable and coprime: no common zero
        return []
    with mpmath.workdps(dps):
        zs = _roots_hp(rz.to_univariate("z"), dps)
        ws = _roots_hp(rw.to_univariate("w"), dps)
        thresh = mpmath.mpf(10) ** (-(dps // 2))
        out = []
        for z in zs:
            for w in ws:
                rp = abs(mp_evaluate(p, z, w)) / max(mp_scale(p, z, w), 1)
                rq = abs(mp_evaluate(q, z, w)) / max(mp_scale(q, z, w), 1)
                if rp <= thresh and rq <= thresh:
                    out.append((z, w))
        return out


def split_critical_locus(f: SparsePolynomial):
    """Return ``(g, p, q)`` with ``g = gcd(f_z, f_w)`` and coprime cofactors."""
    fz = partial_derivative(f, "z")
    fw = partial_derivative(f, "w")
    if fz.is_zero() and fw.is_zero():
        raise PolynomialError("constant polynomial has no isolated critical structure")
    g = bivariate_gcd(fz, fw)
    p = exact_divide(fz, g) if not fz.is_zero() else fz
    q = exact_divide(fw, g) if not fw.is_zero() else fw
    return g, p, q


def _dedupe(values: Sequence[complex], radius: float) -> List[complex]:
    out: List[complex] = []
    for v in values:
        if not any(abs(v - u) <= radius for u in out):
            out.append(v)
    return sorted(out, key=lambda c: (round(c.real, 9), round(c.imag, 9)))


def critical_values(f: SparsePolynomial, precision: float = 1e-8, dps: int = 30) -> CriticalValues:
    """Critical values of ``f`` (values at solutions of ``f_z = f_w = 0``).

    Parameters
    ----------
    f : SparsePolynomial
        Nonconstant polynomial.
    precision : float
        De-duplication radius for the returned values.
    dps : int
        Working precision of root refinement, in decimal digits.

    Returns
    -------
    CriticalValues
        When the critical locus contains curves the flag
        ``positive_dimensional`` is set and the (finitely many) values of
        ``f`` on those curves are included in ``values``.

    Raises
    ------
    PolynomialError
        If ``f`` is constant.

    Examples
    --------
    >>> from newton_atlas.parser import parse_polynomial
    >>> critical_values(parse_polynomial("z^3+w^3")).values
    [0j]
    """
    if f.is_constant():
        raise PolynomialError("critical values of a constant polynomial are undefined")
    g, p, q = split_critical_locus(f)
    result = CriticalValues()
    with mpmath.workdps(dps):
        if not g.is_constant():
            from .parser import render

            result.positive_dimensional = True
            result.curve_factor = render(g)
            pts = curve_points(g, dps)
            result.curve_values = _dedupe([complex(mp_evaluate(f, z, w)) for z, w in pts], precision)
        raw = []
        for z, w in finite_solutions(p, q, dps) if not (p.is_zero() or q.is_zero()) else []:
            val = complex(mp_evaluate(f, z, w))
            raw.append(val)
            result.points.append(CriticalPoint(complex(z), complex(w), val))
    result.values = _dedupe(list(result.curve_values) + raw, precision)
    return result
