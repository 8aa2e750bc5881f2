"""Simultaneous root finding for univariate complex polynomials.

The main routine is an Aberth-Ehrlich iteration in double precision with a
deterministic start on a circle.  :func:`polish_roots` refines the result in
mpmath at a chosen working precision by Newton steps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import mpmath
import numpy as np


class RootFindingError(RuntimeError):
    """Iteration did not converge; ``partial`` holds the last iterates."""

    def __init__(self, message: str, partial: List[complex]):
        super().__init__(message)
        self.partial = partial


def _trim(coeffs: Sequence[complex]) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    nz = np.nonzero(c)[0]
    if nz.size == 0:
        raise ValueError("zero polynomial has no well-defined roots")
    return c[: nz[-1] + 1]


def polynomial_roots(coeffs: Sequence[complex], tol: float = 1e-12, max_iter: int = 500) -> List[complex]:
    """All roots of ``sum(coeffs[k] * y**k)``.

    Parameters
    ----------
    coeffs : sequence of complex
        Coefficients, lowest degree first.  The leading one must be nonzero.
    tol : float
        Relative backward-error target: each root satisfies
        ``|p(r)| <= tol * sum(|c_k| |r|**k)`` up to a small safety factor.
    max_iter : int
        Iteration cap.

    Returns
    -------
    list of complex
        Roots sorted by ``(real, imag)`` after rounding to 12 digits.

    Raises
    ------
    ValueError
        Degree below one.
    RootFindingError
        No convergence within ``max_iter`` iterations.

    Examples
    --------
    >>> [round(r.real, 12) for r in polynomial_roots([-1, 0, 1])]
    [-1.0, 1.0]
    """
    c = _trim(coeffs)
    n = c.size - 1
    if n < 1:
        raise ValueError("polynomial_roots needs degree >= 1")
    zeros_at_origin = 0
    while c[zeros_at_origin] == 0:
        zeros_at_origin += 1
    c = c[zeros_at_origin:]
    n_eff = c.size - 1
    found: List[complex] = [0j] * zeros_at_origin
    if n_eff == 0:
        return _sorted(found)
    if n_eff == 1:
        return _sorted(found + [complex(-c[0] / c[1])])

    desc = c[::-1] / c[-1]
    dderiv = np.polyder(desc)
    # start on a circle whose radius is the geometric mean of the root moduli
    radius = abs(desc[-1]) ** (1.0 / n_eff)
    if radius == 0 or not np.isfinite(radius):
        radius = 1.0
    angles = 2 * np.pi * np.arange(n_eff) / n_eff + 0.4
    z = radius * np.exp(1j * angles)
    absdesc = np.abs(desc)
    converged = np.zeros(n_eff, dtype=bool)
    for _ in range(max_iter):
        p = np.polyval(desc, z)
        dp = np.polyval(dderiv, z)
        scale = np.polyval(absdesc, np.abs(z))
        converged = np.abs(p) <= tol * scale
        if converged.all():
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            s = inv.sum(axis=1)
            step = ratio / (1 - ratio * s)
        step = np.where(converged | ~np.isfinite(step), 0, step)
        z = z - step
    else:
        p = np.polyval(desc, z)
        scale = np.polyval(absdesc, np.abs(z))
        # multiple roots stall near sqrt(eps); accept a looser backward error
        if not np.all(np.abs(p) <= max(tol, 1e-8) * scale):
            raise RootFindingError("Aberth iteration did not converge", _sorted(list(z)))
    return _sorted(found + [complex(v) for v in z])


def _sorted(roots: List[complex]) -> List[complex]:
    return sorted(roots, key=lambda r: (round(r.real, 12), round(r.imag, 12)))


@dataclass(frozen=True)
class PolishedRoot:
    """A root refined in mpmath, with its residual and last Newton step size."""

    value: mpmath.mpc
    residual: mpmath.mpf
    step: mpmath.mpf


def polish_roots(coeffs, approximations: Sequence[complex], dps: int = 40, iterations: int = 60) -> List[PolishedRoot]:
    """Newton refinement of root approximations at ``dps`` decimal digits.

    ``coeffs`` may hold GaussianRational, complex or mpmath values (lowest
    degree first).
    """
    with mpmath.workdps(dps):
        cs = [_to_mpc(c) for c in coeffs]
        desc = cs[::-1]
        ddesc = [c * (len(cs) - 1 - k) for k, c in enumerate(desc[:-1])]
        out = []
        eps = mpmath.mpf(10) ** (-dps + 5)
        for a in approximations:
            x = mpmath.mpc(a)
            step = mpmath.mpf(0)
            for _ in range(iterations):
                p = mpmath.polyval(desc, x)
                dp = mpmath.polyval(ddesc, x)
                if dp == 0:
                    break
                d = p / dp
                x -= d
                step = abs(d)
                if step <= eps * max(1, abs(x)):
                    break
            out.append(PolishedRoot(x, abs(mpmath.polyval(desc, x)), step))
        return out


def _to_mpc(c):
    if hasattr(c, "re") and hasattr(c, "im") and not isinstance(c, (mpmath.mpc, complex)):
        return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                          mpmath.mpf(c.im.numerator) / c.im.denominator)
    return mpmath.mpc(c)
