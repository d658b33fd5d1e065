import math

import numpy as np
import pytest

from src.potential.potentials import (LinearPotential, ScaledPotential, SinePotential, damp,
                                      linearize_at, make_constant_potential,
                                      make_linear_potential, make_sine_potential,
                                      make_table_potential, potential_from_dict, scale)


def _assert_derivatives_consistent(V, xs, h=1e-5, rel=1e-5):
    funcs = [V.eval, V.d1, V.d2, V.d3]
    for f, df in zip(funcs, funcs[1:]):
        central = (f(xs + h) - f(xs - h)) / (2.0 * h)
        exact = df(xs)
        assert np.max(np.abs(central - exact)) <= rel * (1.0 + np.max(np.abs(exact)))


def test_sine_potential_values():
    assert make_sine_potential(10000, 0.05).eval(0.0) == -5000
    v = make_sine_potential(500, -0.2).eval(math.pi / 2)
    assert v == pytest.approx(500 * complex(0.5, -0.2))
    # classical turning point
    assert abs(make_sine_potential(123.0, 0.0).eval(math.pi / 4)) < 1e-10


def test_sine_potential_rejects_nonpositive_prefactor():
    with pytest.raises(ValueError, match="prefactor"):
        make_sine_potential(0.0, 0.1)


def test_builtin_derivatives_match_finite_differences(rng):
    xs = rng.uniform(0.05, 1.5, 100)
    for V in (SinePotential(10000.0, 0.05), SinePotential(500.0, -0.2),
              LinearPotential(1 - 2j, 3 + 0.5j)):
        _assert_derivatives_consistent(V, xs)


def test_tabulated_potential_follows_its_samples():
    x = np.linspace(0.0, 1.0, 201)
    V = make_table_potential(x, np.cos(x), np.sin(x))
    xs = np.linspace(0.1, 0.9, 17)
    assert np.max(np.abs(V.eval(xs) - np.exp(1j * xs))) < 1e-8
    assert np.max(np.abs(V.d1(xs) - 1j * np.exp(1j * xs))) < 1e-6
    assert V.domain == (0.0, 1.0)
    assert not V.is_real


def test_tabulated_potential_validates_lengths():
    with pytest.raises(ValueError, match="at least 4"):
        make_table_potential([0, 1, 2], [0, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError, match="equal length"):
        make_table_potential([0, 1, 2, 3], [0, 0, 0], [0, 0, 0, 0])


def test_linearize_at():
    const = make_constant_potential(-3 + 1j)
    lin = linearize_at(const, 0.4)
    assert lin.b == 0 and lin.a == -3 + 1j

    V = SinePotential(10000.0, 0.05)
    lin = linearize_at(V, math.pi / 4)
    assert lin.b == pytest.approx(10000 + 500j)
    assert lin.eval(math.pi / 4) == pytest.approx(V.eval(math.pi / 4), abs=1e-9)
    assert lin.d1(math.pi / 4) == V.d1(math.pi / 4)

    identity = make_linear_potential(0, 1)
    lin = linearize_at(identity, 0.7)
    assert lin.a == pytest.approx(0) and lin.b == 1


def test_linearize_outside_domain():
    with pytest.raises(ValueError, match="outside potential domain"):
        linearize_at(SinePotential(500.0, -0.2), 2.0)


def test_shifted_slope_keeps_value_at_anchor():
    lin = linearize_at(SinePotential(500.0, -0.2), math.pi / 4)
    shifted = lin.shifted_slope(math.pi / 4, -0.08 * abs(lin.b))
    assert shifted.eval(math.pi / 4) == pytest.approx(lin.eval(math.pi / 4))
    assert shifted.b.real == pytest.approx(lin.b.real - 0.08 * abs(lin.b))
    assert shifted.b.imag == lin.b.imag


def test_scale():
    V = SinePotential(500.0, -0.2)
    assert scale(V, 1.0) is V
    assert scale(make_constant_potential(-1), 4.0).eval(0.3) == -4
    xs = np.linspace(0.0, 1.5, 11)
    nested = scale(scale(V, 3.0), 5.0)
    assert isinstance(nested, ScaledPotential) and nested.factor == 15.0
    assert np.allclose(nested.eval(xs), scale(V, 15.0).eval(xs))
    assert np.allclose(nested.d3(xs), 15.0 * V.d3(xs))
    with pytest.raises(ValueError, match="> 0"):
        scale(V, -1.0)


def test_damp():
    V = SinePotential(10000.0, 0.05)
    assert damp(V, 1.0) is V
    assert damp(V, 0.9).eval(1.0) == pytest.approx(0.9 * V.eval(1.0))
    assert damp(V, 0.25).d2(0.3) == pytest.approx(0.25 * V.d2(0.3))
    with pytest.raises(ValueError, match=r"\(0, 1\]"):
        damp(V, 1.5)


def test_potential_documents_rebuild_the_same_potential():
    x = np.linspace(0.0, 1.0, 9)
    for V in (SinePotential(10000.0, 0.05), make_linear_potential(1 - 1j, 2j),
              make_table_potential(x, x ** 2, -x), scale(SinePotential(500.0, 0.0, 0.6), 2.0)):
        rebuilt = potential_from_dict(V.to_dict())
        assert np.allclose(rebuilt.eval(x[1:-1]), V.eval(x[1:-1]))


def test_potential_from_dict_rejects_unknown_kind():
    with pytest.raises(ValueError, match="Unknown potential kind"):
        potential_from_dict({"kind": "teukolsky"})


def test_real_flags():
    assert SinePotential(500.0, 0.0).is_real
    assert not SinePotential(500.0, -0.2).is_real
    assert make_linear_potential(-2, 1).is_real
