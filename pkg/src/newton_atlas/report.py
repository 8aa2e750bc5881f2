"""Serialisation of reports: JSON, text, CSV and SVG.

JSON output is deterministic: keys are sorted, floats are printed with 17
significant digits (enough to round-trip any double), and complex numbers are
``[re, im]`` pairs.  Re-emitting a parsed document reproduces it byte for
byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, List, Sequence

from .lattice import NewtonPolygon, interior_lattice_count
from .topology import FiberTopologyReport, index_sum_check

SCHEMA = "newton-atlas/1"

BASIS = {
    "genus": "interior lattice points of the Newton polygon of f - xi",
    "n_mu": "sum of lattice segments over the sides facing infinity",
    "pole_order": "(u0-1)*alpha + (v0-1)*beta - 1 at the initial vertex of the side",
    "cone_angle_over_2pi": "pole order plus one",
    "kappa": "1 off (1,1); +-(a11^2 - 4 a20 a02)^(-1/2) on the (2,0)-(0,2) side",
    "completeness": "genus >= 1 incomplete; genus 0 plane if one puncture, cylinder if two",
    "arithmetic_genus": "1 - (-1)^dim * B+",
    "pick_identity": "n_mu - 2S = 2 - 2B+ with 2S the signed fan area from (1,1)",
    "index_sum": "sum of (1-u0)*alpha + (1-v0)*beta + 1 equals 2 - 2*genus",
}


# generic value conversion ----------------------------------------------------


def cpair(c) -> List[float]:
    c = complex(c)
    return [float(c.real), float(c.imag)]


def _format_float(x: float) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    if x == 0:
        return "0.0" if math.copysign(1, x) > 0 else "-0.0"
    text = format(x, ".17g")
    if "e" not in text and "." not in text and "inf" not in text:
        text += ".0"
    return text


def _emit(obj: Any, out: List[str], indent: int, level: int) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, complex):
        _emit(cpair(obj), out, indent, level)
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for k, key in enumerate(keys):
            out.append(pad + json.dumps(str(key), ensure_ascii=False) + ": ")
            _emit(obj[key], out, indent, level + 1)
            out.append(",\n" if k < len(keys) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for k, v in enumerate(obj):
                _emit(v, out, indent, level + 1)
                if k < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for k, v in enumerate(obj):
            out.append(pad)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with a trailing newline."""
    out: List[str] = []
    _emit(obj, out, indent, 0)
    return "".join(out) + "\n"


def loads(text: str) -> Any:
    """Inverse of :func:`dumps` (non-finite markers stay strings)."""
    return json.loads(text)


# reports ------------------------------------------------------------------------


def polygon_dict(P: NewtonPolygon) -> dict:
    d = P.as_dict()
    d["interior_lattice_count"] = interior_lattice_count(P)
    d["area_twice"] = P.area_twice()
    return d


def report_to_dict(report: FiberTopologyReport) -> dict:
    """JSON-ready view of a topology report."""
    idx = index_sum_check(report)
    return {
        "schema": SCHEMA,
        "kind": "fiber-topology",
        "polynomial": report.polynomial,
        "xi": report.xi if isinstance(report.xi, str) else cpair(report.xi),
        "polygon": polygon_dict(report.polygon),
        "polygon_dimension": report.polygon_dimension,
        "genus": report.genus,
        "n_mu": report.n_mu,
        "pole_orders": report.pole_orders,
        "punctures": [
            {
                "edge": p.edge.as_dict(),
                "root_index": p.root_index,
                "root": cpair(p.root),
                "pole_order": p.pole_order,
                "cone_angle_over_2pi": p.cone_angle_over_2pi,
                "index": p.index,
                "kappa": cpair(p.kappa) if p.kappa is not None else None,
            }
            for p in report.punctures
        ],
        "completeness": report.completeness,
        "arithmetic_genus": report.arithmetic_genus,
        "pick_identity": {
            "lhs": report.pick_identity.lhs,
            "rhs": report.pick_identity.rhs,
            "area_twice": report.pick_identity.area_twice,
            "holds": report.pick_identity.holds,
        },
        "index_sum": {"lhs": idx.lhs, "rhs": idx.rhs, "holds": idx.holds},
        "connectivity_claim": report.connectivity_claim,
        "hypotheses": {
            "nondegeneracy": report.nondegeneracy.as_dict(),
            "condition_i": report.condition_i.as_dict(),
            "relaxed_condition_only": report.relaxed_condition_only,
        },
        "exceptional_xi": [cpair(c) for c in report.exceptional_xi],
        "warnings": list(report.warnings),
        "basis": dict(BASIS),
    }


def emit_report(report: FiberTopologyReport, fmt: str = "json") -> bytes:
    """Serialise a report as ``'json'`` or ``'text'`` (UTF-8 bytes)."""
    if fmt == "json":
        return dumps(report_to_dict(report)).encode("utf-8")
    if fmt == "text":
        return report_text(report).encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def _c(c) -> str:
    c = complex(c)
    return f"{c.real:.12g}{c.imag:+.12g}i"


def report_text(report: FiberTopologyReport) -> str:
    P = report.polygon
    pick = report.pick_identity
    idx = index_sum_check(report)
    xi = report.xi if isinstance(report.xi, str) else _c(report.xi)
    lines = [
        f"polynomial: {report.polynomial}",
        f"xi: {xi}",
        f"polygon vertices: {' '.join(str(v) for v in P.vertices)} (dimension {P.dimension})",
        f"non-degenerate ({report.nondegeneracy.mode}): {'yes' if report.nondegeneracy.overall else 'no'}",
        f"condition (i): {'holds' if report.condition_i.holds else 'fails'}"
        + (" (relaxed polygon only)" if report.relaxed_condition_only else ""),
        f"genus n_g = B+: {report.genus}",
        f"punctures n_mu: {report.n_mu}",
    ]
    for p in report.punctures:
        kappa = "undefined" if p.kappa is None else _c(p.kappa)
        lines.append(
            f"  edge {p.edge.start}-{p.edge.end} normal {p.edge.normal} root #{p.root_index} = {_c(p.root)}: "
            f"pole order {p.pole_order}, cone angle {p.cone_angle_over_2pi}*2pi, index {p.index}, kappa {kappa}")
    lines += [
        f"completeness: {report.completeness}",
        f"arithmetic genus: {report.arithmetic_genus}",
        f"n_mu - 2S = 2 - 2B+: {pick.lhs} = {pick.rhs} ({'holds' if pick.holds else 'FAILS'})",
        f"index sum = 2 - 2g: {idx.lhs} = {idx.rhs} ({'holds' if idx.holds else 'FAILS'})",
        f"connectivity claim: {report.connectivity_claim}",
    ]
    if report.exceptional_xi:
        lines.append("exceptional xi: " + ", ".join(_c(c) for c in report.exceptional_xi))
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"


# CSV -------------------------------------------------------------------------------

CHART_COLUMNS = ["xi_re", "xi_im", "u_re", "u_im", "z_re", "z_im", "w_re", "w_im", "residual"]
FLOW_COLUMNS = ["t", "z_re", "z_im", "w_re", "w_im", "drift"]


def _csv(columns: Sequence[str], rows: Iterable[Sequence[float]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format(float(v), ".17g") for v in row])
    return buf.getvalue()


def charts_csv(solutions) -> str:
    rows = []
    for sol in solutions:
        for s in sol.samples:
            rows.append([s.xi.real, s.xi.imag, s.u.real, s.u.imag, s.z.real, s.z.imag, s.w.real, s.w.imag,
                         s.residual])
    return _csv(CHART_COLUMNS, rows)


def flow_csv(traj) -> str:
    return _csv(FLOW_COLUMNS, ([t, z.real, z.imag, w.real, w.imag, d] for t, z, w, d in traj.samples))


# SVG ------------------------------------------------------------------------------


def polygon_svg(P: NewtonPolygon, scale: float = 40.0, margin: float = 30.0) -> str:
    """SVG drawing of ``P`` with lattice points and outward normals.

    Interior lattice points carry ``class="interior-point"``; boundary lattice
    points ``class="boundary-point"``; normals ``class="normal"``.
    """
    xs = [v[0] for v in P.vertices] + [0]
    ys = [v[1] for v in P.vertices] + [0]
    width = (max(xs) - min(xs) + 2) * scale + 2 * margin
    height = (max(ys) - min(ys) + 2) * scale + 2 * margin
    ox, oy = margin + scale - min(xs) * scale, height - margin - scale + min(ys) * scale

    def X(p):
        return ox + p[0] * scale

    def Y(p):
        return oy - p[1] * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:g}" height="{height:g}" '
        f'viewBox="0 0 {width:g} {height:g}">',
        f'<line class="axis" x1="{X((min(xs) - 1, 0)):g}" y1="{Y((0, 0)):g}" x2="{X((max(xs) + 1, 0)):g}" '
        f'y2="{Y((0, 0)):g}" stroke="#999"/>',
        f'<line class="axis" x1="{X((0, 0)):g}" y1="{Y((0, min(ys) - 1)):g}" x2="{X((0, 0)):g}" '
        f'y2="{Y((0, max(ys) + 1)):g}" stroke="#999"/>',
    ]
    if P.dimension == 2:
        pts = " ".join(f"{X(v):g},{Y(v):g}" for v in P.vertices)
        parts.append(f'<polygon class="newton-polygon" points="{pts}" fill="#dde8f5" stroke="#234"/>')
    elif P.dimension == 1:
        a, b = P.vertices
        parts.append(f'<line class="newton-polygon" x1="{X(a):g}" y1="{Y(a):g}" x2="{X(b):g}" y2="{Y(b):g}" '
                     f'stroke="#234" stroke-width="3"/>')
    boundary = set()
    for e in P.edges:
        boundary.update(e.lattice_points())
        mid = ((e.start[0] + e.end[0]) / 2, (e.start[1] + e.end[1]) / 2)
        tip = (mid[0] + 0.5 * e.normal[0] / math.hypot(*e.normal), mid[1] + 0.5 * e.normal[1] / math.hypot(*e.normal))
        parts.append(f'<line class="normal" x1="{X(mid):g}" y1="{Y(mid):g}" x2="{X(tip):g}" y2="{Y(tip):g}" '
                     f'stroke="#c33"/>')
    if P.dimension < 2:
        boundary.update(P.vertices)
    for p in sorted(boundary):
        parts.append(f'<circle class="boundary-point" cx="{X(p):g}" cy="{Y(p):g}" r="4" fill="#234"/>')
    for p in P.interior_points():
        parts.append(f'<circle class="interior-point" cx="{X(p):g}" cy="{Y(p):g}" r="5" fill="#e80"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def count_interior_markers(svg: str) -> int:
    return svg.count('class="interior-point"')


__all__ = [
    "BASIS",
    "CHART_COLUMNS",
    "FLOW_COLUMNS",
    "SCHEMA",
    "charts_csv",
    "count_interior_markers",
    "dumps",
    "emit_report",
    "flow_csv",
    "loads",
    "polygon_svg",
    "report_text",
    "report_to_dict",
]
