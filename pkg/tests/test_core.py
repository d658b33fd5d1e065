import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.core.disk import (ComplexValue, Disk, disk_contains, disk_contains_disk,
                           lens_overlap_fraction, lens_radius)
from src.core.errors import EngineError, GridError, ZeroCrossing
from src.core.grid import Grid, cumulative_integral, numeric_derivative

finite = st.floats(-10.0, 10.0, allow_nan=False, allow_infinity=False)
radius = st.floats(0.0, 5.0, allow_nan=False, allow_infinity=False)


def test_disk_contains_boundary_and_outside():
    d = Disk(0j, 1.0)
    assert disk_contains(d, 1.0)
    assert not disk_contains(d, 1 + 1j)


def test_stationary_circle_contains_fixed_point():
    d = Disk(1j * math.sqrt(2.0), 1.0)
    assert disk_contains(d, 1j)


def test_disk_contains_rejects_infinite_tol():
    with pytest.raises(ValueError, match="finite"):
        disk_contains(Disk(0j, 1.0), 0.5, tol=math.inf)


def test_disk_contains_disk_examples():
    assert disk_contains_disk(Disk(0j, 2.0), Disk(0.5, 1.0))
    assert disk_contains_disk(Disk(0j, 1.0), Disk(0j, 1.0))
    assert not disk_contains_disk(Disk(0j, 1.0), Disk(1.0, 0.5))


def test_disk_rejects_bad_fields():
    with pytest.raises(ValueError, match="radius"):
        Disk(0j, -1.0)
    with pytest.raises(ValueError, match="center"):
        Disk(complex(math.nan, 0.0), 1.0)


def test_disk_decomposition():
    d = Disk(complex(0.25, -3.0), 2.0)
    assert d.alpha == 0.25 and d.beta == -3.0
    assert d.top == -1.0 and d.bottom == -5.0
    assert np.allclose(np.abs(d.boundary(16) - d.center), 2.0)


@given(finite, finite, radius, st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi),
       st.floats(0.0, 1.0), st.floats(0.0, 2 * math.pi))
def test_disk_containment_is_transitive(re, im, r_outer, inner_frac, phi, z_frac, psi):
    outer = Disk(complex(re, im), r_outer)
    inner_r = r_outer * inner_frac
    offset = (r_outer - inner_r) * 0.999
    inner = Disk(outer.center + offset * complex(math.cos(phi), math.sin(phi)), inner_r)
    z = inner.center + inner_r * z_frac * complex(math.cos(psi), math.sin(psi))
    assume(disk_contains_disk(outer, inner) and disk_contains(inner, z))
    assert disk_contains(outer, z, tol=1e-12)


def test_complex_value_parse():
    assert ComplexValue.parse("2,-1").to_complex() == 2 - 1j
    assert ComplexValue.parse("3") == ComplexValue(3.0, 0.0)
    with pytest.raises(ValueError, match="re,im"):
        ComplexValue.parse("1,2,3")
    with pytest.raises(ValueError, match="not finite"):
        ComplexValue.parse("nan,0")


def test_lens_radius():
    d = Disk(0j, 1.0)
    assert lens_radius(d, d) == 1.0
    assert lens_radius(Disk(0j, 1.0), Disk(1.0 + 0j, 1.0)) == pytest.approx(math.sqrt(0.75))
    # one disk inside the other
    assert lens_radius(Disk(0j, 3.0), Disk(0.5 + 0j, 1.0)) == 1.0
    with pytest.raises(ValueError, match="do not intersect"):
        lens_radius(Disk(0j, 1.0), Disk(5.0 + 0j, 1.0))


def test_lens_overlap_fraction():
    lens = (Disk(1j, 1.5), Disk(-1j, 1.5))
    assert lens_overlap_fraction(lens, lens) == 1.0
    far = (Disk(10 + 1j, 1.5), Disk(10 - 1j, 1.5))
    assert lens_overlap_fraction(lens, far) == 0.0


def test_engine_errors_carry_location():
    err = ZeroCrossing("R-beta vanished", x=0.5)
    assert isinstance(err, EngineError) and isinstance(err, ValueError)
    assert err.x == 0.5
    assert "x=0.5" in str(err)


def test_grid_breakpoints(split_grid):
    assert split_grid.n_pieces == 3
    assert split_grid.edges == (0.0, 0.3, 0.7, 1.0)
    # a breakpoint belongs to the piece on its right
    assert split_grid.piece_index(0.3) == 1
    assert split_grid.piece_index(1.0) == 2
    pieces = split_grid.split(split_grid.points)
    assert pieces[0][-1] == pieces[1][0] == 0.3
    assert np.array_equal(split_grid.flatten(pieces), split_grid.points)


def test_grid_rejects_invalid_layouts():
    with pytest.raises(GridError, match="strictly increasing"):
        Grid(np.array([0.0, 1.0, 1.0, 2.0]))
    with pytest.raises(GridError, match="interior points"):
        Grid.uniform(0.0, 1.0, 20, breakpoints=(0.1,))
    with pytest.raises(GridError, match="outside"):
        Grid.uniform(0.0, 1.0, 100, breakpoints=(1.5,))


def test_cumulative_integral_examples(unit_grid):
    assert np.all(cumulative_integral(unit_grid, np.zeros(129)) == 0.0)
    F = cumulative_integral(unit_grid, 2.0 * unit_grid.points)
    assert abs(F[-1] - 1.0) < 1e-10
    # F(x0) = 0 at an interior anchor
    G = cumulative_integral(unit_grid, np.ones(129), x0=0.5)
    assert G[unit_grid.index_of(0.5)] == 0.0
    assert G[0] == pytest.approx(-0.5, abs=1e-12)


def test_cumulative_integral_adds_across_breakpoints(split_grid):
    pieces = [np.full(p.size, float(k + 1)) for k, p in
              enumerate(split_grid.split(split_grid.points))]
    F = cumulative_integral(split_grid, pieces)
    assert F[-1] == pytest.approx(0.3 + 2 * 0.4 + 3 * 0.3, abs=1e-12)
    assert F[split_grid.index_of(0.7)] == pytest.approx(1.1, abs=1e-12)


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_cumulative_integral_is_linear(a, b):
    grid = Grid.uniform(0.0, 2.0, 65)
    f = np.sin(3.0 * grid.points)
    g = np.exp(grid.points) + 1j * grid.points ** 2
    lhs = cumulative_integral(grid, a * f + b * g)
    rhs = a * cumulative_integral(grid, f) + b * cumulative_integral(grid, g)
    assert np.max(np.abs(lhs - rhs)) < 1e-11 * (1.0 + abs(a) + abs(b))


def test_cumulative_integral_refinement_order():
    errors = []
    for n in (65, 129):
        grid = Grid.uniform(0.0, 1.0, n)
        F = cumulative_integral(grid, np.cos(5.0 * grid.points))
        errors.append(abs(F[-1] - math.sin(5.0) / 5.0))
    assert errors[0] / errors[1] >= 8.0


def test_numeric_derivative():
    grid = Grid.uniform(0.0, 1.0, 1001)
    assert np.allclose(numeric_derivative(grid, np.full(1001, 4.0)), 0.0)
    d = numeric_derivative(grid, grid.points ** 2)
    assert np.max(np.abs(d - 2.0 * grid.points)) < 1e-6


def test_numeric_derivative_keeps_split_shape(split_grid):
    pieces = split_grid.split(split_grid.points ** 3)
    out = numeric_derivative(split_grid, pieces)
    assert isinstance(out, list) and len(out) == 3
    assert out[1][0] == pytest.approx(3 * 0.3 ** 2, abs=1e-3)
