import csv
import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newton_atlas.charts import build_chart, chart_contexts, sample_grid
from newton_atlas.flow import integrate_flow
from newton_atlas.lattice import NewtonPolygon
from newton_atlas.parser import parse_polynomial as P
from newton_atlas.report import (CHART_COLUMNS, FLOW_COLUMNS, SCHEMA, charts_csv, count_interior_markers, dumps,
                                 emit_report, flow_csv, loads, polygon_svg, report_to_dict)
from newton_atlas.topology import analyze_fiber


@pytest.fixture(scope="module")
def cubic_report():
    return analyze_fiber(P("z^3+w^3"), 1)


def test_json_payload(cubic_report):
    d = json.loads(emit_report(cubic_report, "json"))
    assert d["schema"] == SCHEMA
    assert (d["genus"], d["n_mu"], d["pole_orders"]) == (1, 3, [0, 0, 0])
    assert d["xi"] == [1.0, 0.0]
    assert all(len(p["root"]) == 2 for p in d["punctures"])
    assert "genus" in d["basis"] and "pick_identity" in d["basis"]


def test_emission_is_deterministic(cubic_report):
    assert emit_report(cubic_report, "json") == emit_report(cubic_report, "json")
    again = analyze_fiber(P("z^3+w^3"), 1)
    assert emit_report(again, "json") == emit_report(cubic_report, "json")


@pytest.mark.parametrize("text, xi", [("z^3+w^3", 1), ("z^2+w^2", "1/3+2i"), ("z^2+w^5+w", "generic")])
def test_json_round_trip(text, xi):
    blob = emit_report(analyze_fiber(P(text), xi), "json")
    assert dumps(loads(blob.decode())).encode() == blob


def test_text_has_pick_line(cubic_report):
    text = emit_report(cubic_report, "text").decode()
    line = next(l for l in text.splitlines() if l.startswith("n_mu - 2S = 2 - 2B+"))
    assert line.startswith("n_mu - 2S = 2 - 2B+: 0 = 0")


def test_unknown_format(cubic_report):
    with pytest.raises(ValueError):
        emit_report(cubic_report, "yaml")


def test_svg_has_one_interior_marker():
    poly = NewtonPolygon.from_points([(3, 0), (0, 3), (0, 0)])
    svg = polygon_svg(poly)
    assert count_interior_markers(svg) == 1
    assert svg.count('class="normal"') == 3
    assert svg.startswith("<svg")


def test_svg_scale_changes_size():
    poly = NewtonPolygon.from_points([(3, 0), (0, 3), (0, 0)])
    assert 'width="260"' in polygon_svg(poly, scale=40)
    assert 'width="160"' in polygon_svg(poly, scale=20)


def test_charts_csv_columns():
    ctx = chart_contexts(P("z^2+w^3"), 1)[0]
    sol = build_chart(ctx, sample_grid(n_xi=2, n_u=2))
    rows = list(csv.reader(io.StringIO(charts_csv([sol]))))
    assert rows[0] == CHART_COLUMNS
    assert len(rows) == 5
    assert all(float(r[-1]) <= 1e-9 for r in rows[1:])


def test_flow_csv_columns():
    traj = integrate_flow(P("z^2+w^3"), 1, (1, 0), t_max=0.5)
    rows = list(csv.reader(io.StringIO(flow_csv(traj))))
    assert rows[0] == FLOW_COLUMNS
    assert float(rows[1][0]) == 0.0


finite = st.floats(allow_nan=False, allow_infinity=False)
json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10**6, 10**6) | finite | st.text(max_size=5),
    lambda inner: st.lists(inner, max_size=4) | st.dictionaries(st.text(max_size=4), inner, max_size=4),
    max_leaves=15)


@settings(max_examples=150, deadline=None)
@given(json_values)
def test_dumps_round_trip_is_byte_identical(value):
    text = dumps(value)
    assert dumps(loads(text)) == text


@given(finite)
def test_floats_keep_17_significant_digits(x):
    assert float(json.loads(dumps([x]))[0]) == x


def test_complex_becomes_pair():
    assert json.loads(dumps({"c": 1 - 2j})) == {"c": [1.0, -2.0]}


def test_report_dict_keys(cubic_report):
    d = report_to_dict(cubic_report)
    assert d["pick_identity"]["holds"] and d["index_sum"]["holds"]
    assert d["connectivity_claim"] in ("asserted", "not-asserted")
