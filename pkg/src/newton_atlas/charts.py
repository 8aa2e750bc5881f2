"""Numerical charts at the points at infinity of a fibre.

For a side of the Newton polygon with primitive normal ``(alpha, beta)``,
``alpha >= 1``, initial vertex ``(u0, v0)`` and a simple root ``y_hat`` of its
edge polynomial, the chart is

    J(xi, u) = (u**-alpha, u**-beta * s),   s**alpha = y_hat + g(xi, u),

where ``g`` solves ``F(xi, u, g) = 0`` with ``g(xi, 0) = 0`` and

    F = sum_{l,m} a_lm u**(E - alpha l - beta m) s**m - xi u**E,
    E = alpha u0 + beta v0.

``F`` is ``u**E (f(J) - xi)``, and at ``u = 0`` it reduces to
``s**v0 P(y_hat + g)``, so the implicit function theorem applies because
``P'(y_hat) != 0``.  The branch of ``s`` is fixed as
``y_hat**(1/alpha) * (1 + g/y_hat)**(1/alpha)`` with principal powers, which
is continuous while ``|g| < |y_hat|``.  Sides with ``alpha = 0`` are handled
by exchanging ``z`` and ``w``.

Because ``f(J) - xi = u**-E F``, a residual of ``1e-9`` at ``|u| = 1e-3``
needs ``|F|`` near ``1e-9 * 1e-3E``; all chart arithmetic therefore runs in
mpmath with ``E*log10(1/|u|)`` extra digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .lattice import Edge, newton_polygon
from .nondegeneracy import edge_polynomial
from .poly import SparsePolynomial
from .roots import polish_roots
from .topology import edge_roots, pole_order


class ChartError(RuntimeError):
    """Newton continuation failed or left the chosen branch.

    ``reached`` is the largest ``|u|`` at which a solution was obtained.
    """

    def __init__(self, message: str, reached: float = 0.0):
        super().__init__(message)
        self.reached = reached


def _mpc(c) -> mpmath.mpc:
    return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                      mpmath.mpf(c.im.numerator) / c.im.denominator)


@dataclass
class ChartContext:
    """Precomputed data for one ``(edge, root)`` chart.

    ``swapped`` records that ``z`` and ``w`` were exchanged to make
    ``alpha >= 1``; ``edge`` and ``root`` then refer to the swapped
    polynomial, while ``original_edge`` and ``original_root`` keep the
    caller's view.
    """

    f: SparsePolynomial
    edge: Edge
    root: complex
    alpha: int
    beta: int
    E: int
    swapped: bool
    original_edge: Edge
    original_root: complex
    terms: List[Tuple[object, int, int]] = field(default_factory=list)

    def dps_for(self, u_abs: float, extra: int = 0) -> int:
        lost = self.E * max(0.0, -math.log10(max(u_abs, 1e-300)))
        return int(30 + lost + extra)


def _match_edge(g: SparsePolynomial, start, end) -> Edge:
    for e in newton_polygon(g).edges:
        if {e.start, e.end} == {start, end}:
            return e
    raise ChartError("edge not found on the exchanged polygon")


def make_context(f: SparsePolynomial, edge: Edge, root: complex) -> ChartContext:
    """Validate the chart inputs and precompute the exponent table.

    Raises
    ------
    ChartError
        If the normal has no positive coordinate or the root is not simple.
    """
    alpha, beta = edge.normal
    if alpha < 0 or beta < 0 or (alpha == 0 and beta == 0):
        raise ChartError(f"edge normal {edge.normal} does not face infinity")
    swapped = False
    g, e, r = f, edge, complex(root)
    if alpha == 0:
        swapped = True
        g = f.swap_variables()
        e = _match_edge(g, (edge.start[1], edge.start[0]), (edge.end[1], edge.end[0]))
        r = 1 / r
        alpha, beta = e.normal
    P = edge_polynomial(g, e).poly
    with mpmath.workdps(40):
        pol = polish_roots(P.coeffs, [r], dps=40)[0]
        dP = P.derivative()
        if abs(complex(pol.value) - r) > 1e-6 * max(1.0, abs(r)):
            raise ChartError("root approximation is not close to a root of the edge polynomial")
        if abs(complex(pol.residual)) > 1e-20 * max(1.0, abs(r)) ** P.degree:
            raise ChartError("root does not satisfy the edge polynomial")
        if abs(_mp_poly(dP, pol.value)) < 1e-12:
            raise ChartError("edge polynomial root is not simple")
        r = complex(pol.value)
    u0, v0 = e.start
    E = alpha * u0 + beta * v0
    ctx = ChartContext(g, e, r, alpha, beta, E, swapped, edge, complex(root))
    for (l, m), c in g.terms.items():
        ctx.terms.append((c, E - alpha * l - beta * m, m))
    return ctx


def _mp_poly(p, x):
    acc = mpmath.mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * x + _mpc(c)
    return acc


class _Evaluator:
    """``F`` and ``F_g`` at fixed precision for one context."""

    def __init__(self, ctx: ChartContext, xi, u):
        self.ctx = ctx
        self.xi = mpmath.mpc(xi)
        self.u = mpmath.mpc(u)
        self.yhat = mpmath.mpc(ctx.root)
        self.inv_alpha = mpmath.mpf(1) / ctx.alpha
        self.base = self.yhat ** self.inv_alpha
        self.coef = [(_mpc(c), e, m, self.u ** e) for c, e, m in ctx.terms]
        self.uE = self.u ** ctx.E

    def s(self, g):
        return self.base * (1 + g / self.yhat) ** self.inv_alpha

    def F(self, g):
        s = self.s(g)
        total = -self.xi * self.uE
        dg = mpmath.mpc(0)
        for c, e, m, ue in self.coef:
            term = c * ue * s ** m
            total += term
            dg += term * m
        dg = dg / (self.ctx.alpha * (self.yhat + g))
        return total, dg

    def F_u(self, g):
        """Partial derivative of ``F`` in ``u`` at fixed ``g``."""
        s = self.s(g)
        total = -self.xi * self.ctx.E * self.uE / self.u
        for c, e, m, ue in self.coef:
            if e:
                total += c * e * ue / self.u * s ** m
        return total

    def F_xi(self):
        return -self.uE


def _newton(ev: _Evaluator, g0, target, max_iter: int) -> Tuple[Optional[mpmath.mpc], int]:
    g = mpmath.mpc(g0)
    for k in range(1, max_iter + 1):
        F, Fg = ev.F(g)
        if Fg == 0:
            return None, k
        g = g - F / Fg
        if abs(g) >= 0.9 * abs(ev.yhat):
            return None, k
        if abs(F) <= target:
            F2, _ = ev.F(g)
            if abs(F2) <= target:
                return g, k
    F, _ = ev.F(g)
    return (g if abs(F) <= target else None), max_iter


def solve_g(ctx: ChartContext, xi, u, tol: float = 1e-12, perturb: complex = 0,
            max_iter: int = 12, dps: Optional[int] = None) -> mpmath.mpc:
    """Solve ``F(xi, u, g) = 0`` by Newton continuation from ``g = 0``.

    The path runs along the ray from ``0`` to ``u``; the step grows after a
    success and halves after a failure.

    Parameters
    ----------
    ctx : ChartContext
        From :func:`make_context`.
    xi, u : complex
        Fibre value and chart coordinate (``u != 0``).
    tol : float
        Target for ``|f(J) - xi|``; Newton stops at ``|F| <= tol |u|**E``.
    perturb : complex
        Offset added to the initial guess of the first step (used to test
        uniqueness).

    Returns
    -------
    mpmath.mpc
        ``g(xi, u)`` at the working precision.

    Raises
    ------
    ChartError
        If the step size underflows; ``reached`` holds the largest ``|u|``
        solved.
    """
    ua = abs(complex(u))
    if ua == 0:
        return mpmath.mpc(0)
    work = dps if dps is not None else ctx.dps_for(ua)
    with mpmath.workdps(work):
        u_mp = mpmath.mpc(u)
        g = mpmath.mpc(perturb)
        t = mpmath.mpf(0)
        step = mpmath.mpf(1)
        while t < 1:
            t_new = min(mpmath.mpf(1), t + step)
            ut = u_mp * t_new
            ev = _Evaluator(ctx, xi, ut)
            target = mpmath.mpf(tol) * abs(ut) ** ctx.E * mpmath.mpf("1e-3")
            sol, _ = _newton(ev, g, target, max_iter)
            if sol is None:
                step /= 2
                if step < mpmath.mpf("1e-8"):
                    raise ChartError("Newton continuation step underflow", float(abs(u_mp * t)))
                continue
            g, t = sol, t_new
            step = min(step * 2, mpmath.mpf(1))
        return g


def chart_point_mp(ctx: ChartContext, xi, u, g=None, tol: float = 1e-12):
    """``(z, w)`` in mpmath at the precision current at call time."""
    if g is None:
        g = solve_g(ctx, xi, u, tol=tol, dps=mpmath.mp.dps)
    ev = _Evaluator(ctx, xi, u)
    u_mp = mpmath.mpc(u)
    a = u_mp ** (-ctx.alpha)
    b = u_mp ** (-ctx.beta) * ev.s(g)
    return (b, a) if ctx.swapped else (a, b)


def _residual(f: SparsePolynomial, z, w, xi) -> mpmath.mpf:
    total = -mpmath.mpc(xi)
    for (l, m), c in f.terms.items():
        total += _mpc(c) * z ** l * w ** m
    return abs(total)


@dataclass(frozen=True)
class ChartSample:
    xi: complex
    u: complex
    g: complex
    z: complex
    w: complex
    residual: float


def chart_point(ctx: ChartContext, xi, u, tol: float = 1e-12) -> ChartSample:
    """Evaluate the chart and its fibre residual ``|f(J(xi,u)) - xi|``.

    The residual is computed by evaluating the original polynomial at the
    chart point in extended precision, independently of ``F``.
    """
    if u == 0:
        raise ChartError("the chart is not defined at u = 0")
    with mpmath.workdps(ctx.dps_for(abs(complex(u)), 10)):
        g = solve_g(ctx, xi, u, tol=tol, dps=mpmath.mp.dps)
        z, w = chart_point_mp(ctx, xi, u, g)
        f_orig = ctx.f.swap_variables() if ctx.swapped else ctx.f
        res = _residual(f_orig, z, w, xi)
        return ChartSample(complex(xi), complex(u), complex(g), complex(z), complex(w), float(res))


@dataclass
class ChartSolution:
    """A realised chart: edge, root, branch and verified samples."""

    edge: Edge
    root: complex
    root_residual: float
    alpha: int
    beta: int
    branch_base: complex
    branch_cut: str
    samples: List[ChartSample]
    working_radius: Optional[float] = None
    pullback: Optional["PullbackFit"] = None

    @property
    def max_residual(self) -> float:
        return max((s.residual for s in self.samples), default=0.0)


def sample_grid(xi0: complex = 1, xi_radius: float = 0.1, u_min: float = 1e-3, u_max: float = 1e-1,
                n_xi: int = 10, n_u: int = 10) -> List[Tuple[complex, complex]]:
    """Deterministic ``n_xi x n_u`` grid of ``(xi, u)`` pairs.

    ``xi`` fills the disc ``|xi - xi0| <= xi_radius`` on a spiral; ``|u|`` is
    log-spaced over ``[u_min, u_max]`` with varying arguments.
    """
    xis = []
    for j in range(n_xi):
        r = xi_radius * (j + 1) / n_xi
        xis.append(complex(xi0) + r * complex(math.cos(2.4 * j), math.sin(2.4 * j)))
    us = []
    for k in range(n_u):
        mod = u_min * (u_max / u_min) ** (k / max(n_u - 1, 1))
        us.append(mod * complex(math.cos(0.7 * k + 0.3), math.sin(0.7 * k + 0.3)))
    return [(x, u) for x in xis for u in us]


def chart_contexts(f: SparsePolynomial, xi0=1) -> List[ChartContext]:
    """One context per ``(edge, root)`` of the sides of ``f - xi0`` facing infinity."""
    F = f - SparsePolynomial.constant(_to_gaussian(xi0))
    out = []
    for e in newton_polygon(F).puncture_edges():
        for r in edge_roots(F, e):
            out.append(make_context(f, e, r))
    return out


def _to_gaussian(x):
    from fractions import Fraction

    from .gaussian import GaussianRational

    if isinstance(x, GaussianRational):
        return x
    x = complex(x)
    return GaussianRational(Fraction(x.real), Fraction(x.imag))


def build_chart(ctx: ChartContext, grid: Sequence[Tuple[complex, complex]], tol: float = 1e-12) -> ChartSolution:
    """Evaluate a chart on a grid of ``(xi, u)`` samples."""
    samples = [chart_point(ctx, xi, u, tol=tol) for xi, u in grid]
    P = edge_polynomial(ctx.f, ctx.edge).poly
    root_res = abs(complex(_mp_poly(P, mpmath.mpc(ctx.root))))
    base = complex(mpmath.mpc(ctx.root) ** (mpmath.mpf(1) / ctx.alpha))
    return ChartSolution(ctx.original_edge, ctx.original_root, root_res, ctx.alpha, ctx.beta, base,
                         "(1 + g/y_hat)**(1/alpha) principal; cut where g/y_hat <= -1", samples)


def working_radius(ctx: ChartContext, xi0=1, xi_radius: float = 0.1, start: float = 0.25,
                   max_iter: int = 8, floor: float = 1e-6) -> float:
    """Largest radius ``start / 2**j`` at which direct Newton from ``g = 0``
    converges within ``max_iter`` steps at sample points of the ``xi`` disc
    and of the ``u`` circle."""
    r = start
    probes_xi = [complex(xi0) + xi_radius * complex(math.cos(a), math.sin(a)) for a in (0.0, 2.1, 4.2)]
    probes_xi.append(complex(xi0))
    while r >= floor:
        ok = True
        for xi in probes_xi:
            for a in (0.0, 1.6, 3.2, 4.8):
                u = r * complex(math.cos(a), math.sin(a))
                with mpmath.workdps(ctx.dps_for(r)):
                    ev = _Evaluator(ctx, xi, u)
                    target = mpmath.mpf("1e-15") * abs(mpmath.mpc(u)) ** ctx.E
                    sol, _ = _newton(ev, 0, target, max_iter)
                if sol is None:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return r
        r /= 2
    raise ChartError("no working radius above the floor", 0.0)


# pullback exponent ----------------------------------------------------------


@dataclass(frozen=True)
class PullbackFit:
    """Least-squares fit of ``log|det dJ|`` against ``log|u|``."""

    slope: float
    intercept: float
    r_squared: float
    stderr: float
    ci95: Tuple[float, float]
    expected: int
    n: int

    @property
    def well_conditioned(self) -> bool:
        return self.r_squared >= 0.999


def jacobian_det(ctx: ChartContext, xi, u):
    """``det d(z, w)/d(xi, u)`` with the partials of the chart.

    ``g_xi`` and ``g_u`` come from implicit differentiation of
    ``F(xi, u, g) = 0``, so no finite differences are involved.  Returns
    ``(det, (z_xi, z_u, w_xi, w_u))`` as mpmath numbers.
    """
    ua = abs(complex(u))
    with mpmath.workdps(ctx.dps_for(ua, 20)):
        g = solve_g(ctx, xi, u, tol=1e-30, dps=mpmath.mp.dps)
        ev = _Evaluator(ctx, xi, u)
        _, Fg = ev.F(g)
        g_xi = -ev.F_xi() / Fg
        g_u = -ev.F_u(g) / Fg
        s = ev.s(g)
        ds = s / (ctx.alpha * (ev.yhat + g))
        um = ev.u
        a_u = -ctx.alpha * um ** (-ctx.alpha - 1)
        b_xi = um ** (-ctx.beta) * ds * g_xi
        b_u = -ctx.beta * um ** (-ctx.beta - 1) * s + um ** (-ctx.beta) * ds * g_u
        if ctx.swapped:
            z_xi, z_u, w_xi, w_u = b_xi, b_u, mpmath.mpc(0), a_u
        else:
            z_xi, z_u, w_xi, w_u = mpmath.mpc(0), a_u, b_xi, b_u
        det = z_xi * w_u - z_u * w_xi
        return det, (z_xi, z_u, w_xi, w_u)


def fit_loglog(x: Sequence[float], y: Sequence[float], expected: int) -> PullbackFit:
    """Ordinary least squares with the usual coefficient of determination."""
    X = np.asarray(x, dtype=float)
    Y = np.asarray(y, dtype=float)
    n = X.size
    A = np.vstack([X, np.ones(n)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, Y, rcond=None)
    pred = slope * X + intercept
    ss_res = float(np.sum((Y - pred) ** 2))
    ss_tot = float(np.sum((Y - Y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res == 0 else 0.0)
    sxx = float(np.sum((X - X.mean()) ** 2))
    stderr = math.sqrt(ss_res / (n - 2) / sxx) if n > 2 and sxx > 0 else float("inf")
    return PullbackFit(float(slope), float(intercept), r2, stderr,
                       (float(slope) - 1.96 * stderr, float(slope) + 1.96 * stderr), expected, n)


def pullback_exponent(ctx: ChartContext, grid: Sequence[Tuple[complex, complex]]) -> PullbackFit:
    """Slope of ``log|det dJ|`` against ``log|u|`` over ``grid``.

    The expected value is the pole order ``(u0-1)alpha + (v0-1)beta - 1`` of
    the side.  The grid should span at least two decades in ``|u|``.
    """
    xs, ys = [], []
    for xi, u in grid:
        det, _ = jacobian_det(ctx, xi, u)
        xs.append(math.log(abs(complex(u))))
        ys.append(float(mpmath.log(abs(det))))
    return fit_loglog(xs, ys, pole_order(ctx.original_edge))


def disjointness(solutions: Sequence[ChartSolution], u_max: float = 1e-2) -> float:
    """Smallest max-modulus distance between sample images of different charts
    (restricted to ``|u| <= u_max``)."""
    best = math.inf
    for i in range(len(solutions)):
        for j in range(i + 1, len(solutions)):
            for a in solutions[i].samples:
                if abs(a.u) > u_max:
                    continue
                for b in solutions[j].samples:
                    if abs(b.u) > u_max:
                        continue
                    best = min(best, max(abs(a.z - b.z), abs(a.w - b.w)))
    return best


__all__ = [
    "ChartContext",
    "ChartError",
    "ChartSample",
    "ChartSolution",
    "PullbackFit",
    "build_chart",
    "chart_contexts",
    "chart_point",
    "disjointness",
    "fit_loglog",
    "jacobian_det",
    "make_context",
    "pullback_exponent",
    "sample_grid",
    "solve_g",
    "working_radius",
]
