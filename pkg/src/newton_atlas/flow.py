"""Hamiltonian flow of ``f`` on its fibres.

The field is ``direction * (-f_w, f_z)``; it is tangent to every fibre
because ``f_z * (-f_w) + f_w * f_z = 0``.  Integration uses the
Dormand-Prince 5(4) pair in mpmath (escape to radius ``1e5`` makes the
polynomial terms ``1e10`` to ``1e15`` in size, beyond what double precision
can hold to ``1e-8``).  After each accepted step the state is pulled back to
the fibre by one Newton step along ``conj(grad f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import mpmath

from .poly import SparsePolynomial, partial_derivative

# Dormand-Prince 5(4) tableau
_C = [0, "1/5", "3/10", "4/5", "8/9", 1, 1]
_A = [
    [],
    ["1/5"],
    ["3/40", "9/40"],
    ["44/45", "-56/15", "32/9"],
    ["19372/6561", "-25360/2187", "64448/6561", "-212/729"],
    ["9017/3168", "-355/33", "46732/5247", "49/176", "-5103/18656"],
    ["35/384", "0", "500/1113", "125/192", "-2187/6784", "11/84"],
]
_B5 = ["35/384", "0", "500/1113", "125/192", "-2187/6784", "11/84", "0"]
_B4 = ["5179/57600", "0", "7571/16695", "393/640", "-92097/339200", "187/2100", "1/40"]


def _frac(s) -> mpmath.mpf:
    if isinstance(s, int):
        return mpmath.mpf(s)
    num, _, den = str(s).partition("/")
    return mpmath.mpf(int(num)) / (int(den) if den else 1)


class FlowError(RuntimeError):
    """Integration failed (typically step-size underflow near a critical point)."""


class _MpPoly:
    """Horner evaluator of a SparsePolynomial in mpmath."""

    def __init__(self, f: SparsePolynomial):
        rows = {}
        for (l, m), c in f.terms.items():
            rows.setdefault(m, {})[l] = c
        self.rows = []
        for m in sorted(rows, reverse=True):
            r = rows[m]
            self.rows.append((m, [r.get(k) for k in range(max(r) + 1)]))
        self._cache_dps = None

    def _convert(self):
        if self._cache_dps == mpmath.mp.dps:
            return self._table
        table = []
        for m, row in self.rows:
            conv = []
            for c in row:
                if c is None:
                    conv.append(0)
                else:
                    conv.append(mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                                           mpmath.mpf(c.im.numerator) / c.im.denominator))
            table.append((m, conv))
        self._table = table
        self._cache_dps = mpmath.mp.dps
        return table

    def __call__(self, z, w):
        table = self._convert()
        if not table:
            return mpmath.mpc(0)
        acc = None
        prev = None
        for m, row in table:
            inner = mpmath.mpc(0)
            for c in reversed(row):
                inner = inner * z + c
            acc = inner if acc is None else acc * w ** (prev - m) + inner
            prev = m
        if prev:
            acc = acc * w ** prev
        return acc


@dataclass
class FlowTrajectory:
    """Samples of one integral curve.

    Attributes
    ----------
    start : tuple of complex
    direction : complex
        Unit complex multiplier of the field.
    samples : list of (t, z, w, drift)
        One entry per accepted step, ``drift = |f(z, w) - xi|``.
    escape_events : list of (R, t_R)
        First time the Euclidean norm of ``(z, w)`` reaches ``R``.
    stop_reason : str
    """

    start: Tuple[complex, complex]
    direction: complex
    xi: complex
    samples: List[Tuple[float, complex, complex, float]] = field(default_factory=list)
    escape_events: List[Tuple[float, float]] = field(default_factory=list)
    stop_reason: str = ""
    final_state: Optional[Tuple[complex, complex]] = None
    final_mp: Optional[tuple] = field(default=None, repr=False)

    def escape_time(self, radius: float) -> Optional[float]:
        for r, t in self.escape_events:
            if r == radius:
                return t
        return None


class _System:
    def __init__(self, f: SparsePolynomial, direction: complex):
        self.f = _MpPoly(f)
        self.fz = _MpPoly(partial_derivative(f, "z"))
        self.fw = _MpPoly(partial_derivative(f, "w"))
        self.direction = mpmath.mpc(direction)

    def rhs(self, y):
        z, w = y
        return (-self.direction * self.fw(z, w), self.direction * self.fz(z, w))

    def project(self, y, xi):
        z, w = y
        r = self.f(z, w) - xi
        gz, gw = self.fz(z, w), self.fw(z, w)
        n2 = abs(gz) ** 2 + abs(gw) ** 2
        if n2 == 0:
            return y
        return (z - r * mpmath.conj(gz) / n2, w - r * mpmath.conj(gw) / n2)


def _norm(y) -> mpmath.mpf:
    return mpmath.sqrt(abs(y[0]) ** 2 + abs(y[1]) ** 2)


class _Stepper:
    def __init__(self, system: _System):
        self.sys = system
        self.c = [_frac(c) for c in _C]
        self.a = [[_frac(x) for x in row] for row in _A]
        self.b5 = [_frac(x) for x in _B5]
        self.b4 = [_frac(x) for x in _B4]

    def step(self, y, h):
        """One DOPRI5 step; returns ``(y5, err_vector)``."""
        ks = []
        for i in range(7):
            if i == 0:
                yi = y
            else:
                yi = (y[0] + h * sum(self.a[i][j] * ks[j][0] for j in range(i)),
                      y[1] + h * sum(self.a[i][j] * ks[j][1] for j in range(i)))
            ks.append(self.sys.rhs(yi))
        y5 = (y[0] + h * sum(self.b5[j] * ks[j][0] for j in range(7)),
              y[1] + h * sum(self.b5[j] * ks[j][1] for j in range(7)))
        e = (h * sum((self.b5[j] - self.b4[j]) * ks[j][0] for j in range(7)),
             h * sum((self.b5[j] - self.b4[j]) * ks[j][1] for j in range(7)))
        return y5, e


def integrate_flow(f: SparsePolynomial, xi, start: Tuple[complex, complex], direction: complex = 1,
                   t_max: float = 50.0, escape_radii: Sequence[float] = (), tol: float = 1e-10,
                   atol: float = 1e-12, dps: int = 30, project: bool = True,
                   max_steps: int = 200000, start_tol: float = 1e-9) -> FlowTrajectory:
    """Integrate ``d(z, w)/dt = direction * (-f_w, f_z)`` on ``f = xi``.

    Parameters
    ----------
    f : SparsePolynomial
    xi : complex
        Fibre value; ``|f(start) - xi|`` must not exceed ``start_tol``.
    start : (complex, complex)
    direction : complex
        Unit complex number; ``1`` and ``1j`` give the two commuting real
        flows.
    t_max : float
        Final time (``t >= 0``).
    escape_radii : sequence of float
        Radii whose first-passage times are recorded; integration stops once
        the largest is reached.
    tol, atol : float
        Relative and absolute local error tolerances.
    dps : int
        mpmath working precision.
    project : bool
        Apply the Newton projection onto the fibre after each step (turn off
        only for diagnostics).

    Returns
    -------
    FlowTrajectory

    Raises
    ------
    ValueError
        Start point off the fibre or direction not of unit modulus.
    FlowError
        Step-size underflow or step budget exhausted.
    """
    if abs(abs(complex(direction)) - 1) > 1e-12:
        raise ValueError("direction must be a unit complex number")
    radii = sorted(float(r) for r in escape_radii)
    with mpmath.workdps(dps):
        system = _System(f, direction)
        stepper = _Stepper(system)
        xi_mp = mpmath.mpc(xi)
        y = (mpmath.mpc(start[0]), mpmath.mpc(start[1]))
        drift0 = abs(system.f(*y) - xi_mp)
        if drift0 > start_tol:
            raise ValueError(f"start point is off the fibre (|f - xi| = {float(drift0):.3g})")
        traj = FlowTrajectory((complex(start[0]), complex(start[1])), complex(direction), complex(xi))
        traj.samples.append((0.0, complex(y[0]), complex(y[1]), float(drift0)))
        t = mpmath.mpf(0)
        T = mpmath.mpf(t_max)
        rtol, abstol = mpmath.mpf(tol), mpmath.mpf(atol)
        h = mpmath.mpf("0.01")
        pending = list(radii)
        for _ in range(max_steps):
            if t >= T:
                traj.stop_reason = "t_max"
                break
            h = min(h, T - t)
            y_new, err = stepper.step(y, h)
            scale0 = abstol + rtol * max(abs(y[0]), abs(y_new[0]))
            scale1 = abstol + rtol * max(abs(y[1]), abs(y_new[1]))
            en = max(abs(err[0]) / scale0, abs(err[1]) / scale1)
            if en <= 1:
                if pending and _norm(y_new) >= pending[0]:
                    # locate crossings inside this step by bisection on the substep length
                    while pending and _norm(y_new) >= pending[0]:
                        R = pending.pop(0)
                        lo, hi = mpmath.mpf(0), h
                        for _ in range(80):
                            mid = (lo + hi) / 2
                            ym, _ = stepper.step(y, mid)
                            if _norm(ym) >= R:
                                hi = mid
                            else:
                                lo = mid
                            if hi - lo <= mpmath.mpf("1e-14") * max(1, t):
                                break
                        traj.escape_events.append((R, float(t + hi)))
                t = t + h
                y = system.project(y_new, xi_mp) if project else y_new
                drift = abs(system.f(*y) - xi_mp)
                traj.samples.append((float(t), complex(y[0]), complex(y[1]), float(drift)))
                if radii and not pending:
                    traj.stop_reason = "escaped"
                    break
            fac = mpmath.mpf("0.9") * (en if en > 0 else mpmath.mpf("1e-10")) ** mpmath.mpf("-0.2")
            h = h * min(mpmath.mpf(5), max(mpmath.mpf("0.2"), fac))
            if h < mpmath.mpf(10) ** (-(dps - 5)) * max(1, t):
                raise FlowError("step size underflow")
        else:
            raise FlowError("step budget exhausted")
        traj.final_state = (complex(y[0]), complex(y[1]))
        traj.final_mp = y
        return traj


def conservation_report(traj: FlowTrajectory) -> float:
    """Maximum drift ``|f - xi|`` over the trajectory (``0`` when empty)."""
    return max((s[3] for s in traj.samples), default=0.0)


def escape_ratios(traj: FlowTrajectory) -> List[float]:
    """Ratios of successive first-passage time differences."""
    ts = [t for _, t in traj.escape_events]
    diffs = [b - a for a, b in zip(ts, ts[1:])]
    return [d2 / d1 for d1, d2 in zip(diffs, diffs[1:]) if d1 != 0]


def escape_label(traj: FlowTrajectory, threshold: float = 0.5) -> str:
    """Diagnostic label, never a certificate.

    ``'finite-escape-evidence'`` when at least three radii were reached and
    every ratio of successive differences is at most ``threshold``;
    ``'unbounded-time-evidence'`` when the differences do not shrink;
    otherwise ``'inconclusive'``.
    """
    ratios = escape_ratios(traj)
    if len(traj.escape_events) >= 3 and ratios and all(r <= threshold for r in ratios):
        return "finite-escape-evidence"
    if len(traj.escape_events) >= 2 and ratios and all(r >= 1 - 1e-3 for r in ratios):
        return "unbounded-time-evidence"
    return "inconclusive"


@dataclass(frozen=True)
class LocalFlowCheck:
    """Fit of ``log|du/dt|`` against ``log|u|`` inside a chart."""

    slope: float
    expected: int
    max_xi_component: float
    r_squared: float


def local_coordinate_flow_check(f: SparsePolynomial, ctx, xi, us: Sequence[complex]) -> LocalFlowCheck:
    """Push the Hamiltonian field into chart coordinates ``(xi, u)``.

    The chart Jacobian is inverted numerically at each ``u``; the
    ``u``-component should scale like ``|u|**((1-u0)alpha + (1-v0)beta + 1)``
    and the ``xi``-component should vanish.
    """
    from .charts import chart_point_mp, fit_loglog, jacobian_det

    xs, ys, xi_comp = [], [], 0.0
    (u0, v0), (a, b) = ctx.original_edge.start, ctx.original_edge.normal
    expected = (1 - u0) * a + (1 - v0) * b + 1
    fz_p, fw_p = _MpPoly(partial_derivative(f, "z")), _MpPoly(partial_derivative(f, "w"))
    for u in us:
        _, (z_xi, z_u, w_xi, w_u) = jacobian_det(ctx, xi, u)
        with mpmath.workdps(ctx.dps_for(abs(complex(u)), 20)):
            z, w = chart_point_mp(ctx, xi, u)
            vz, vw = -fw_p(z, w), fz_p(z, w)
            det = z_xi * w_u - z_u * w_xi
            d_xi = (w_u * vz - z_u * vw) / det
            d_u = (-w_xi * vz + z_xi * vw) / det
            xs.append(math.log(abs(complex(u))))
            ys.append(float(mpmath.log(abs(d_u))))
            xi_comp = max(xi_comp, float(abs(d_xi)))
    fit = fit_loglog(xs, ys, expected)
    return LocalFlowCheck(fit.slope, expected, xi_comp, fit.r_squared)


__all__ = [
    "FlowError",
    "FlowTrajectory",
    "LocalFlowCheck",
    "conservation_report",
    "escape_label",
    "escape_ratios",
    "integrate_flow",
    "local_coordinate_flow_check",
]
