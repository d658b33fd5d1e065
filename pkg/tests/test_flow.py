import cmath
import math

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from src.core.errors import DegenerateToLine, NotImaginary, PoleEncountered
from src.flow.moebius import (ConstantFlow, circle_track, classify_fixed_points, exact_solution,
                              propagate_circle, stable_tanh, stationary_circle_centers)


def _reference(V, y0, x):
    sol = solve_ivp(lambda t, y: V - y * y, (0.0, x), [complex(y0)], method="DOP853",
                    rtol=1e-12, atol=1e-12)
    return sol.y[0, -1]


def test_fixed_points_do_not_move():
    flow = ConstantFlow(2 - 1j)
    for x in (0.1, 1.0, 7.0):
        assert exact_solution(flow, flow.zeta, x) == pytest.approx(flow.zeta, abs=1e-12)
        assert exact_solution(flow, -flow.zeta, x) == pytest.approx(-flow.zeta, abs=1e-12)


def test_exact_solution_matches_ode():
    flow = ConstantFlow(2 - 1j)
    y = exact_solution(flow, 0j, 0.3)
    assert abs(y - _reference(flow.V, 0j, 0.3)) < 1e-9


def test_from_potential_uses_principal_root():
    flow = ConstantFlow.from_potential(-4)
    assert flow.zeta == 2j
    assert flow.V == pytest.approx(-4)


def test_pole_is_reported():
    flow = ConstantFlow(1.0)
    with pytest.raises(PoleEncountered):
        exact_solution(flow, -2.0, math.atanh(0.5))


def test_zero_radius_fixed_point_circle():
    flow = ConstantFlow(2 - 1j)
    disk = propagate_circle(flow, flow.zeta, 0.0, 0.8)
    assert disk.radius == 0.0
    assert disk.center == pytest.approx(flow.zeta, abs=1e-12)


def _fit_circle(points):
    """Least-squares circle through complex points: (center, radius)."""
    A = np.column_stack([2 * points.real, 2 * points.imag, np.ones(points.size)])
    b = np.abs(points) ** 2
    (cx, cy, c0), *_ = np.linalg.lstsq(A, b, rcond=None)
    return complex(cx, cy), math.sqrt(c0 + cx * cx + cy * cy)


def test_circle_image_matches_integrated_boundary(rng):
    """A circle fitted to 64 integrated boundary points is the propagated circle."""
    checked = 0
    for _ in range(40):
        zeta = cmath.rect(rng.uniform(0.5, 3.0), rng.uniform(-math.pi / 2, math.pi / 2))
        m0 = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        R0 = rng.uniform(0.1, 1.0)
        x = rng.uniform(0.1, 1.5)
        flow = ConstantFlow(zeta)
        try:
            track = [propagate_circle(flow, m0, R0, t) for t in np.linspace(0.0, x, 41)]
        except DegenerateToLine:
            continue
        disk = track[-1]
        if max(d.radius + abs(d.center) for d in track) > 10.0:
            continue
        phis = 2 * np.pi * np.arange(64) / 64
        boundary = m0 + R0 * np.exp(1j * phis)
        sol = solve_ivp(lambda t, y: flow.V - y * y, (0.0, x), boundary.astype(complex),
                        method="DOP853", rtol=1e-13, atol=1e-13)
        assert sol.success
        center, radius = _fit_circle(sol.y[:, -1])
        scale = 1.0 + disk.radius + abs(disk.center)
        assert abs(center - disk.center) < 1e-7 * scale
        assert abs(radius - disk.radius) < 1e-7 * scale
        checked += 1
        if checked == 12:
            break
    assert checked >= 8


def test_departure_from_unstable_fixed_point_is_not_a_pole():
    flow = ConstantFlow(2 - 1j)
    y = exact_solution(flow, -flow.zeta + 1e-6, 7.0)
    assert y == pytest.approx(flow.zeta, abs=1e-4)


def test_circle_flow_is_a_semigroup():
    flow = ConstantFlow(1.5 + 0.7j)
    m0, R0 = 0.3 - 0.2j, 0.6
    direct = propagate_circle(flow, m0, R0, 0.9)
    half = propagate_circle(flow, m0, R0, 0.4)
    twice = propagate_circle(flow, half.center, half.radius, 0.5)
    assert abs(direct.center - twice.center) < 1e-8
    assert abs(direct.radius - twice.radius) < 1e-8


def test_circle_degenerates_when_it_covers_a_pole():
    flow = ConstantFlow(1.0)
    with pytest.raises(DegenerateToLine):
        propagate_circle(flow, -2.0, 0.5, math.atanh(0.5))


def test_circle_track_flags_degenerate_rows():
    rows = circle_track(ConstantFlow(1.0), -2.0, 0.5, [0.0, math.atanh(0.5), 1.0])
    assert [r["degenerate"] for r in rows] == [False, True, False]
    assert math.isnan(rows[1]["R"])
    assert rows[0]["R"] == pytest.approx(0.5)


def test_classify_fixed_points():
    fp = classify_fixed_points(ConstantFlow(2 - 1j))
    assert fp.stable == 2 - 1j and fp.unstable == -2 + 1j
    fp = classify_fixed_points(ConstantFlow(-1.0))
    assert fp.stable == 1 and fp.unstable == -1
    assert classify_fixed_points(ConstantFlow(1j)).both_centers


def test_stationary_circle_centers():
    upper, lower = stationary_circle_centers(1j, 0.0)
    assert upper == pytest.approx(1j) and lower == pytest.approx(-1j)
    upper, _ = stationary_circle_centers(1j, 1.0)
    assert upper == pytest.approx(1j * math.sqrt(2.0))
    upper, _ = stationary_circle_centers(2j, 2.0)
    assert upper == pytest.approx(1j * math.sqrt(8.0))
    with pytest.raises(NotImaginary):
        stationary_circle_centers(1 + 1j, 1.0)


@pytest.mark.parametrize("zeta", [1j, 2j, 0.5j])
@pytest.mark.parametrize("R0", [0.1, 1.0, 3.0])
def test_stationary_circles_are_invariant(zeta, R0):
    flow = ConstantFlow(zeta)
    for m0 in stationary_circle_centers(zeta, R0):
        for x in (0.1, 1.0, 10.0):
            disk = propagate_circle(flow, m0, R0, x)
            assert abs(disk.center - m0) < 1e-8
            assert abs(disk.radius - R0) < 1e-8


def test_off_axis_circle_is_not_stationary():
    flow = ConstantFlow(1j)
    disk = propagate_circle(flow, 0.2 + 1j * math.sqrt(2.0), 1.0, 1.0)
    assert abs(disk.center - (0.2 + 1j * math.sqrt(2.0))) > 1e-3


def test_stable_tanh():
    assert stable_tanh(1000.0) == 1.0
    assert stable_tanh(-1000 + 3j) == -1.0
    assert stable_tanh(0.5) == pytest.approx(math.tanh(0.5))
    assert stable_tanh(0.3 + 0.4j) == pytest.approx(cmath.tanh(0.3 + 0.4j))


def test_constant_flow_rejects_zero():
    with pytest.raises(ValueError, match="nonzero"):
        ConstantFlow(0)
