import cmath

import numpy as np
import pytest

from newton_atlas.charts import chart_contexts
from newton_atlas.flow import (FlowError, conservation_report, escape_label, escape_ratios, integrate_flow,
                               local_coordinate_flow_check)
from newton_atlas.parser import parse_polynomial as P

RADII = (1e3, 1e4, 1e5)


def _close(a, b, tol):
    return abs(a[0] - b[0]) <= tol and abs(a[1] - b[1]) <= tol


def test_linear_field_is_a_translation():
    traj = integrate_flow(P("z"), 2, (2, 1j), direction=1, t_max=3.0)
    z, w = traj.final_state
    assert z == pytest.approx(2, abs=1e-12)
    assert w == pytest.approx(3 + 1j, abs=1e-10)
    assert conservation_report(traj) <= 1e-20


def test_linear_field_escapes_in_linear_time():
    traj = integrate_flow(P("z"), 0, (0, 0), direction=1, t_max=2e5, escape_radii=RADII)
    times = [t for _, t in traj.escape_events]
    assert times == pytest.approx(list(RADII), rel=1e-8)
    assert escape_label(traj) == "unbounded-time-evidence"


def test_cusp_escapes_in_finite_time():
    traj = integrate_flow(P("z^2+w^3"), 1, (1, 0), direction=1, t_max=50, escape_radii=RADII)
    assert len(traj.escape_events) == 3
    assert escape_ratios(traj)[0] <= 0.5
    assert escape_label(traj) == "finite-escape-evidence"
    assert conservation_report(traj) <= 1e-8


def test_quadric_escape_differences_stay_bounded_below():
    traj = integrate_flow(P("z^2+w^2"), 1, (1, 0), direction=1j, t_max=50, escape_radii=RADII)
    ts = [t for _, t in traj.escape_events]
    assert len(ts) == 3
    assert min(b - a for a, b in zip(ts, ts[1:])) >= 0.1
    assert conservation_report(traj) <= 1e-8


def test_quadric_real_flow_is_periodic():
    traj = integrate_flow(P("z^2+w^2"), 1, (1, 0), direction=1, t_max=2 * np.pi)
    assert _close(traj.final_state, (1, 0), 1e-8)


def test_time_reversal():
    f = P("z^2+w^3")
    fwd = integrate_flow(f, 1, (1, 0), direction=cmath.exp(0.4j), t_max=1.5)
    back = integrate_flow(f, 1, fwd.final_state, direction=-cmath.exp(0.4j), t_max=1.5)
    assert _close(back.final_state, (1, 0), 1e-6)


def test_real_and_imaginary_flows_commute():
    f = P("z^3+w^3")
    start = (1, 0)
    a, b = 0.4, 0.3
    p1 = integrate_flow(f, 1, start, 1, t_max=a).final_state
    p1 = integrate_flow(f, 1, p1, 1j, t_max=b).final_state
    p2 = integrate_flow(f, 1, start, 1j, t_max=b).final_state
    p2 = integrate_flow(f, 1, p2, 1, t_max=a).final_state
    assert _close(p1, p2, 1e-6)


def test_zero_length_trajectory_has_zero_drift():
    traj = integrate_flow(P("z^2+w^3"), 1, (1, 0), t_max=0.0)
    assert conservation_report(traj) == 0.0


def test_projection_off_is_diagnostic_only():
    f = P("z^2+w^2")
    on = integrate_flow(f, 1, (1, 0), direction=1, t_max=20)
    off = integrate_flow(f, 1, (1, 0), direction=1, t_max=20, project=False, tol=1e-6, atol=1e-8)
    assert conservation_report(on) <= 1e-8
    assert conservation_report(off) >= conservation_report(on)


def test_start_must_lie_on_fibre():
    with pytest.raises(ValueError):
        integrate_flow(P("z^2+w^3"), 1, (2, 0))


def test_direction_must_be_unit():
    with pytest.raises(ValueError):
        integrate_flow(P("z^2+w^3"), 1, (1, 0), direction=2)


def test_step_budget():
    with pytest.raises(FlowError):
        integrate_flow(P("z^2+w^2"), 1, (1, 0), direction=1, t_max=50, max_steps=5)


US = [r * cmath.exp(0.7j) for r in np.geomspace(1e-3, 1e-2, 6)]


@pytest.mark.parametrize("text, expected", [("z^2+w^3", 0), ("z^2+w^5+w", -2), ("z^2+w^2", 1)])
def test_field_in_chart_coordinates(text, expected):
    f = P(text)
    for ctx in chart_contexts(f, 1):
        check = local_coordinate_flow_check(f, ctx, 1, US)
        assert check.expected == expected
        assert abs(check.slope - expected) <= 0.05
        assert check.max_xi_component <= 1e-6
