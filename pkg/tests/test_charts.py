import cmath
import math

import mpmath
import numpy as np
import pytest

from newton_atlas.charts import (ChartError, build_chart, chart_contexts, chart_point, disjointness,
                                 fit_loglog, make_context, pullback_exponent, sample_grid, solve_g,
                                 working_radius)
from newton_atlas.lattice import newton_polygon
from newton_atlas.parser import parse_polynomial as P


def _ctx(text, normal, root):
    f = P(text)
    e = next(e for e in newton_polygon(f - P("1")).edges if e.normal == normal)
    return make_context(f - P("1") + P("1"), e, root)


def test_cusp_chart_residual_and_modulus():
    ctx = _ctx("z^2+w^3", (3, 2), -1)
    s = chart_point(ctx, 1, 0.05)
    assert s.residual <= 1e-9
    s = chart_point(ctx, 1, 1e-2)
    assert abs(s.z) == pytest.approx(1e6, rel=1e-12)


def test_cubic_chart_residual():
    ctx = _ctx("z^3+w^3", (1, 1), -1)
    assert chart_point(ctx, 1, 0.05).residual <= 1e-9


def test_grid_residuals_for_all_cubic_charts():
    grid = sample_grid(n_xi=4, n_u=4)
    for ctx in chart_contexts(P("z^3+w^3"), 1):
        sol = build_chart(ctx, grid)
        assert sol.max_residual <= 1e-9
        assert sol.root_residual < 1e-14


def test_anchor_g_vanishes_at_u_zero():
    for text, normal in [("z^2+w^3", (3, 2)), ("z^3+w^3", (1, 1)), ("z^2+w^5+w", (5, 2))]:
        ctx = chart_contexts(P(text), 1)[0]
        rs = np.geomspace(1e-4, 1e-2, 8)
        for theta in (0.3, 2.0):
            gs = [complex(solve_g(ctx, 1, r * cmath.exp(1j * theta))) for r in rs]
            coeffs = np.polyfit(rs, np.array(gs), 2)
            assert abs(coeffs[-1]) < 1e-6
        assert abs(gs[0]) < abs(gs[-1])


def test_uniqueness_under_perturbed_start():
    for ctx in chart_contexts(P("z^3+w^3"), 1) + chart_contexts(P("z^2+w^3"), 1):
        for u in (0.01, 0.05 * cmath.exp(1j), 0.1j):
            g0 = complex(solve_g(ctx, 1.05, u))
            g1 = complex(solve_g(ctx, 1.05, u, perturb=1e-6))
            g2 = complex(solve_g(ctx, 1.05, u, perturb=-1e-6j))
            assert abs(g0 - g1) <= 1e-8 and abs(g0 - g2) <= 1e-8


def test_charts_of_distinct_roots_are_disjoint():
    grid = sample_grid(n_xi=3, n_u=6)
    sols = [build_chart(ctx, grid) for ctx in chart_contexts(P("z^3+w^3"), 1)]
    assert len(sols) == 3
    assert disjointness(sols) >= 1


def test_winding_of_z():
    ctx = _ctx("z^2+w^3", (3, 2), -1)
    angles = np.linspace(0, 2 * math.pi, 41)
    zs = [chart_point(ctx, 1, 1e-2 * cmath.exp(1j * a)).z for a in angles]
    total = sum(cmath.phase(b / a) for a, b in zip(zs, zs[1:]))
    assert round(total / (2 * math.pi)) == -3


def test_vertical_normal_is_handled_by_swapping():
    # rectangle: the top side (2,1)-(0,1) has normal (0,1)
    f = P("z^2*w + 3*z*w + w + z^2 + 2")
    ctxs = chart_contexts(f, 1)
    swapped = [c for c in ctxs if c.swapped]
    assert swapped
    grid = sample_grid(n_xi=2, n_u=3)
    for ctx in swapped:
        assert build_chart(ctx, grid).max_residual <= 1e-9


def test_non_simple_root_is_rejected():
    f = P("z^2+2*z*w+w^2+w-1")
    e = next(e for e in newton_polygon(f).edges if e.normal == (1, 1))
    with pytest.raises(ChartError):
        make_context(f, e, -1)


def test_wrong_root_is_rejected():
    f = P("z^3+w^3-1")
    e = next(e for e in newton_polygon(f).edges if e.normal == (1, 1))
    with pytest.raises(ChartError):
        make_context(f, e, 2)


def test_working_radius_is_recorded():
    for ctx in chart_contexts(P("z^2+w^3"), 1):
        r = working_radius(ctx)
        assert 1e-6 <= r <= 0.25


@pytest.mark.parametrize("text, expected", [("z^2+w^3", 0), ("z^3+w^3", 0), ("z^2+w^5+w", 2)])
def test_pullback_slope(text, expected):
    grid = sample_grid(n_xi=4, n_u=6)
    for ctx in chart_contexts(P(text), 1):
        fit = pullback_exponent(ctx, grid)
        assert fit.expected == expected
        assert abs(fit.slope - expected) <= 0.05


def test_pullback_of_pole_is_well_fitted():
    fit = pullback_exponent(chart_contexts(P("z^2+w^5+w"), 1)[0], sample_grid(n_xi=4, n_u=6))
    assert fit.r_squared >= 0.999


def test_fit_loglog_exact_line():
    x = np.linspace(-7, -2, 10)
    fit = fit_loglog(x, 2 * x + 1, expected=2)
    assert fit.slope == pytest.approx(2) and fit.intercept == pytest.approx(1)
    assert fit.r_squared == pytest.approx(1)


def test_chart_undefined_at_zero():
    ctx = _ctx("z^2+w^3", (3, 2), -1)
    with pytest.raises(ChartError):
        chart_point(ctx, 1, 0)


def test_mpmath_precision_is_restored():
    before = mpmath.mp.dps
    chart_point(_ctx("z^3+w^3", (1, 1), -1), 1, 1e-3)
    assert mpmath.mp.dps == before


def test_jacobian_matches_central_differences():
    from newton_atlas.charts import chart_point_mp, jacobian_det

    for text in ["z^2+w^3", "z^2+w^5+w", "z^2*w + 3*z*w + w + z^2 + 2"]:
        for ctx in chart_contexts(P(text), 1):
            xi, u = 1.02 + 0.01j, 0.02 * cmath.exp(0.5j)
            _, exact = jacobian_det(ctx, xi, u)
            with mpmath.workdps(ctx.dps_for(abs(u), 40)):
                h = mpmath.mpf("1e-15")
                hu = h * abs(u)
                plus_x = chart_point_mp(ctx, xi + h, u, tol=1e-40)
                minus_x = chart_point_mp(ctx, xi - h, u, tol=1e-40)
                plus_u = chart_point_mp(ctx, xi, u + hu, tol=1e-40)
                minus_u = chart_point_mp(ctx, xi, u - hu, tol=1e-40)
                fd = [(plus_x[0] - minus_x[0]) / (2 * h), (plus_u[0] - minus_u[0]) / (2 * hu),
                      (plus_x[1] - minus_x[1]) / (2 * h), (plus_u[1] - minus_u[1]) / (2 * hu)]
            for a, b in zip(exact, fd):
                assert abs(complex(a) - complex(b)) <= 1e-8 * max(1.0, abs(complex(b)))
