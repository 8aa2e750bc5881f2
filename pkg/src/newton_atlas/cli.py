"""Command-line interface.

Exit codes: 0 on success, 2 when a hypothesis fails (or ``check`` finds the
polynomial degenerate), 1 on usage or internal errors.  Diagnostics for exit
code 2 are written in the selected format just like a successful report.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import report as rep
from .charts import (ChartError, build_chart, chart_contexts, disjointness, pullback_exponent, sample_grid,
                     working_radius)
from .critical import critical_values
from .flow import FlowError, conservation_report, escape_label, escape_ratios, integrate_flow
from .lattice import NewtonPolygon, check_condition_i, newton_polygon
from .nondegeneracy import certify_nondegenerate
from .parser import ParseError, parse_polynomial, render
from .topology import HypothesisError, ReportError, analyze_fiber

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_HYPOTHESIS = 2

SUBCOMMANDS = ("analyze", "check", "charts", "flow", "critical-values", "polygon-svg")


class UsageError(ValueError):
    pass


@dataclass
class AnalysisRequest:
    """A parsed invocation.

    ``format`` is the single primary output format; ``out`` receives the
    primary artifact (stdout when ``None``).
    """

    command: str
    polynomial: str
    xi: str = "generic"
    mode: Optional[str] = None
    format: str = "text"
    tol: float = 1e-9
    seed: Optional[int] = None
    out: Optional[str] = None
    check_only: bool = False
    charts: bool = False
    flow: bool = False
    csv: Optional[str] = None
    grid: int = 10
    start: Optional[str] = None
    direction: str = "1"
    t_max: float = 50.0
    radii: List[float] = field(default_factory=lambda: [1e3, 1e4, 1e5])
    scale: float = 40.0
    raw: bool = False

    def __post_init__(self):
        if self.format not in ("text", "json"):
            raise UsageError(f"unknown format {self.format!r}")


@dataclass
class RunResult:
    status: int
    payload: dict
    artifact: bytes


def parse_complex(text: str) -> complex:
    """Parse a constant in polynomial syntax, e.g. ``"1"``, ``"i"`` or ``"1/3-2i"``."""
    f = parse_polynomial(text)
    if not f.is_constant():
        raise UsageError(f"expected a constant, got {text!r}")
    return complex(f.terms.get((0, 0), 0))


def _xi_value(text: str):
    return "generic" if text == "generic" else parse_complex(text)


def _envelope(kind: str, **kw) -> dict:
    d = {"schema": rep.SCHEMA, "kind": kind}
    d.update(kw)
    return d


def _text_from_dict(d: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in d:
        if key == "schema":
            continue
        v = d[key]
        if isinstance(v, dict):
            lines.append(f"{pad}{key}:")
            lines.append(_text_from_dict(v, indent + 1).rstrip("\n"))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{key}:")
            for item in v:
                lines.append(f"{pad}  -")
                lines.append(_text_from_dict(item, indent + 2).rstrip("\n"))
        else:
            lines.append(f"{pad}{key}: {v}")
    return "\n".join(lines) + "\n"


def _encode(req: AnalysisRequest, payload: dict, text: Optional[str] = None) -> bytes:
    if req.format == "json":
        return rep.dumps(payload).encode("utf-8")
    return (text if text is not None else _text_from_dict(payload)).encode("utf-8")


def _hypothesis_failure(req: AnalysisRequest, err: HypothesisError) -> RunResult:
    payload = _envelope("hypothesis-failure", polynomial=req.polynomial, **err.as_dict())
    return RunResult(EXIT_HYPOTHESIS, payload, _encode(req, payload))


def _run_check(req: AnalysisRequest, f, mode: str) -> RunResult:
    P = NewtonPolygon.from_points(list(f.terms) + [(0, 0)])
    verdict = certify_nondegenerate(f, mode=mode)
    cond = check_condition_i(P)
    payload = _envelope("nondegeneracy", polynomial=render(f), nondegeneracy=verdict.as_dict(),
                        condition_i=cond.as_dict())
    status = EXIT_OK if verdict.overall else EXIT_HYPOTHESIS
    return RunResult(status, payload, _encode(req, payload))


def _chart_grid(req: AnalysisRequest, xi0: complex):
    grid = sample_grid(xi0=xi0, n_xi=req.grid, n_u=req.grid)
    if req.seed is None:
        return grid
    rng = np.random.default_rng(req.seed)
    phases = np.exp(2j * np.pi * rng.random(len(grid)))
    return [(xi, abs(u) * complex(ph)) for (xi, u), ph in zip(grid, phases)]


def _charts_payload(req: AnalysisRequest, f, xi0: complex):
    grid = _chart_grid(req, xi0)
    start = time.perf_counter()
    solutions = []
    for ctx in chart_contexts(f, xi0):
        sol = build_chart(ctx, grid)
        sol.working_radius = working_radius(ctx, xi0)
        sol.pullback = pullback_exponent(ctx, grid)
        solutions.append(sol)
    elapsed = time.perf_counter() - start
    charts = []
    for sol in solutions:
        fit = sol.pullback
        charts.append({
            "edge": sol.edge.as_dict(),
            "root": rep.cpair(sol.root),
            "root_residual": sol.root_residual,
            "alpha": sol.alpha,
            "beta": sol.beta,
            "branch_base": rep.cpair(sol.branch_base),
            "branch_cut": sol.branch_cut,
            "working_radius": sol.working_radius,
            "max_residual": max(s.residual for s in sol.samples),
            "samples": len(sol.samples),
            "pullback": {"slope": fit.slope, "expected": fit.expected, "r_squared": fit.r_squared,
                         "stderr": fit.stderr, "ci95": list(fit.ci95)},
        })
    worst = max((c["max_residual"] for c in charts), default=0.0)
    payload = _envelope("charts", polynomial=render(f), xi0=rep.cpair(xi0), charts=charts,
                        max_residual=worst, within_tol=worst <= req.tol,
                        disjointness=disjointness(solutions) if len(solutions) > 1 else None,
                        runtime_s=elapsed)
    return payload, rep.charts_csv(solutions)


def _flow_payload(req: AnalysisRequest, f, xi: complex):
    if req.start is None:
        raise UsageError("flow requires --start z,w")
    parts = req.start.split(",")
    if len(parts) != 2:
        raise UsageError("--start expects two comma-separated values")
    start_pt = (parse_complex(parts[0]), parse_complex(parts[1]))
    direction = parse_complex(req.direction)
    t0 = time.perf_counter()
    traj = integrate_flow(f, xi, start_pt, direction=direction, t_max=req.t_max, escape_radii=req.radii)
    elapsed = time.perf_counter() - t0
    times = [t for _, t in traj.escape_events]
    payload = _envelope(
        "flow", polynomial=render(f), xi=rep.cpair(xi), start=[rep.cpair(c) for c in start_pt],
        direction=rep.cpair(direction), escape_times=[[r, t] for r, t in traj.escape_events],
        escape_ratios=escape_ratios(traj),
        escape_differences=[b - a for a, b in zip(times, times[1:])],
        max_drift=conservation_report(traj), label=escape_label(traj), stop_reason=traj.stop_reason,
        runtime_s=elapsed)
    return payload, rep.flow_csv(traj)


def run(req: AnalysisRequest) -> RunResult:
    """Execute a request and return its exit status and primary artifact."""
    if req.command not in SUBCOMMANDS:
        raise UsageError(f"unknown command {req.command!r}")
    f = parse_polynomial(req.polynomial)
    if req.command == "check" or (req.command == "analyze" and req.check_only):
        default = "full" if req.command == "check" else "relaxed"
        return _run_check(req, f, req.mode or default)

    if req.command == "analyze":
        try:
            report = analyze_fiber(f, _xi_value(req.xi), mode=req.mode or "relaxed")
        except HypothesisError as err:
            return _hypothesis_failure(req, err)
        payload = rep.report_to_dict(report)
        text = rep.report_text(report)
        xi0 = 1 if isinstance(report.xi, str) else complex(report.xi)
        if req.charts:
            payload["charts"], _ = _charts_payload(req, f, xi0)
            text += _text_from_dict({"charts": payload["charts"]})
        if req.flow:
            payload["flow"], _ = _flow_payload(req, f, xi0)
            text += _text_from_dict({"flow": payload["flow"]})
        return RunResult(EXIT_OK, payload, _encode(req, payload, text))

    if req.command == "critical-values":
        cv = critical_values(f, precision=req.tol if req.tol < 1e-6 else 1e-8)
        payload = _envelope("critical-values", polynomial=render(f), values=[rep.cpair(c) for c in cv.values],
                            positive_dimensional=cv.positive_dimensional,
                            curve_values=[rep.cpair(c) for c in cv.curve_values],
                            zero_is_critical=cv.contains(0))
        return RunResult(EXIT_OK, payload, _encode(req, payload))

    if req.command == "polygon-svg":
        P = newton_polygon(f) if req.raw else NewtonPolygon.from_points(list(f.terms) + [(0, 0)])
        svg = rep.polygon_svg(P, scale=req.scale)
        payload = _envelope("polygon", polynomial=render(f), polygon=rep.polygon_dict(P))
        return RunResult(EXIT_OK, payload, svg.encode("utf-8"))

    xi_text = "1" if req.xi == "generic" else req.xi
    xi = parse_complex(xi_text)
    if req.command == "charts":
        payload, table = _charts_payload(req, f, xi)
    else:
        payload, table = _flow_payload(req, f, xi)
    if req.format == "json":
        if req.csv:
            with open(req.csv, "w", encoding="utf-8") as fh:
                fh.write(table)
        return RunResult(EXIT_OK, payload, rep.dumps(payload).encode("utf-8"))
    return RunResult(EXIT_OK, payload, table.encode("utf-8"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--tol", type=float, default=1e-9, help="residual tolerance")
    common.add_argument("--mode", choices=["full", "relaxed"], default=None,
                        help="non-degeneracy mode (default: full for check, relaxed otherwise)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomised sample phases")
    common.add_argument("--out", default=None, help="write the primary artifact here instead of stdout")

    parser = argparse.ArgumentParser(prog="newton-atlas", description="Fibre topology of polynomials in two variables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="topology report for a fibre")
    p.add_argument("polynomial")
    p.add_argument("--xi", default="generic")
    p.add_argument("--check-only", action="store_true", help="only certify non-degeneracy")
    p.add_argument("--charts", action="store_true", help="also verify the charts at infinity")
    p.add_argument("--flow", action="store_true", help="also integrate the Hamiltonian flow")
    p.add_argument("--start", default=None)
    p.add_argument("--direction", default="1")
    p.add_argument("--t-max", type=float, default=50.0)

    p = sub.add_parser("check", parents=[common], help="certify non-degeneracy")
    p.add_argument("polynomial")

    p = sub.add_parser("charts", parents=[common], help="sample the charts at infinity")
    p.add_argument("polynomial")
    p.add_argument("--xi", default="1")
    p.add_argument("--grid", type=int, default=10)
    p.add_argument("--csv", default=None, help="CSV path when --format json")

    p = sub.add_parser("flow", parents=[common], help="integrate the Hamiltonian flow on a fibre")
    p.add_argument("polynomial")
    p.add_argument("--xi", default="1")
    p.add_argument("--start", required=True, help="starting point as z,w")
    p.add_argument("--direction", default="1", help="complex time direction, e.g. 1 or i")
    p.add_argument("--t-max", type=float, default=50.0)
    p.add_argument("--radii", default="1e3,1e4,1e5")
    p.add_argument("--csv", default=None, help="CSV path when --format json")

    p = sub.add_parser("critical-values", parents=[common], help="critical values of f")
    p.add_argument("polynomial")

    p = sub.add_parser("polygon-svg", parents=[common], help="draw the Newton polygon")
    p.add_argument("polynomial")
    p.add_argument("--scale", type=float, default=40.0, help="pixels per lattice unit")
    p.add_argument("--raw", action="store_true", help="polygon of f itself rather than of f - xi for generic xi")
    return parser


def request_from_args(ns: argparse.Namespace) -> AnalysisRequest:
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    kw["check_only"] = kw.pop("check_only", False)
    kw["t_max"] = kw.pop("t_max", 50.0)
    if "radii" in kw:
        kw["radii"] = [float(x) for x in str(kw["radii"]).split(",")]
    return AnalysisRequest(**kw)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INTERNAL
    try:
        req = request_from_args(ns)
        result = run(req)
    except ParseError as err:
        print(f"newton-atlas: parse error ({err.kind}) at byte {err.offset}: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ValueError) as err:
        print(f"newton-atlas: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except ReportError as err:
        print(f"newton-atlas: report error: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ChartError, FlowError) as err:
        print(f"newton-atlas: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as err:  # noqa: BLE001
        print(f"newton-atlas: internal error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_INTERNAL
    if req.out:
        with open(req.out, "wb") as fh:
            fh.write(result.artifact)
    else:
        sys.stdout.write(result.artifact.decode("utf-8"))
        sys.stdout.flush()
    return result.status


if __name__ == "__main__":
    sys.exit(main())
