"""
Closed-form center lines alpha for real potentials.

    NegativeWkbAlpha      alpha = -V'/(4V),             V < 0
    PositiveWkbAlpha      alpha = sqrt(V)/2 - V'/(4V),  V > 0 (WKB wave of V/4)
    constant alpha        alpha = c + sup sqrt(max(0, V))

Each yields (alpha, alpha', alpha'') per smooth piece of a grid.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..core.errors import HypothesisViolated, RealPotentialRequired, SignViolation
from ..core.grid import Grid
from ..potential.potentials import Potential
from .inputs import ConstantAlpha

REAL_TOL = 1e-12
SUP_POINTS = 4097


def _real_derivatives(V: Potential, xs: np.ndarray):
    v, v1, v2, v3 = (np.asarray(d, dtype=complex) for d in V.derivatives(xs))
    if np.any(np.abs(v.imag) > REAL_TOL * (1.0 + np.abs(v.real))):
        raise RealPotentialRequired("Closed-form center lines need a real potential",
                                    x=float(xs[np.argmax(np.abs(v.imag) > 0)]))
    return v.real, v1.real, v2.real, v3.real


def _require_sign(v: np.ndarray, xs: np.ndarray, sign: int):
    bad = v >= 0.0 if sign < 0 else v <= 0.0
    if np.any(bad):
        word = "negative" if sign < 0 else "positive"
        raise SignViolation(f"Potential must be {word}", x=float(xs[np.argmax(bad)]))


@dataclass(frozen=True)
class NegativeWkbAlpha:
    V: Potential

    def alpha_pieces(self, grid: Grid):
        out = []
        for k in range(grid.n_pieces):
            xs = grid.piece_points(k)
            v, v1, v2, v3 = _real_derivatives(self.V, xs)
            _require_sign(v, xs, -1)
            alpha = -v1 / (4.0 * v)
            dalpha = -v2 / (4.0 * v) + v1 ** 2 / (4.0 * v ** 2)
            ddalpha = -v3 / (4.0 * v) + 3.0 * v1 * v2 / (4.0 * v ** 2) - v1 ** 3 / (2.0 * v ** 3)
            out.append((alpha, dalpha, ddalpha))
        return out


@dataclass(frozen=True)
class PositiveWkbAlpha:
    V: Potential

    def alpha_pieces(self, grid: Grid):
        out = []
        for k in range(grid.n_pieces):
            xs = grid.piece_points(k)
            v, v1, v2, v3 = _real_derivatives(self.V, xs)
            _require_sign(v, xs, 1)
            s = np.sqrt(v)
            alpha = 0.5 * s - v1 / (4.0 * v)
            dalpha = v1 / (4.0 * s) - v2 / (4.0 * v) + v1 ** 2 / (4.0 * v ** 2)
            ddalpha = (v2 / (4.0 * s) - v1 ** 2 / (8.0 * v * s) - v3 / (4.0 * v)
                       + 3.0 * v1 * v2 / (4.0 * v ** 2) - v1 ** 3 / (2.0 * v ** 3))
            out.append((alpha, dalpha, ddalpha))
        return out


def exponential_bound_alpha(V: Potential, interval: Sequence[float], c: float,
                            n: int = SUP_POINTS) -> ConstantAlpha:
    """alpha = c + sup sqrt(max(0, Re V)) over interval, sampled on n points."""
    if c < 0:
        raise ValueError(f"c must be non-negative, got {c}")
    xs = np.linspace(float(interval[0]), float(interval[1]), n)
    re_v = np.real(np.asarray(V.eval(xs), dtype=complex))
    return ConstantAlpha(float(c) + float(np.sqrt(np.max(np.maximum(re_v, 0.0)))))


def wkb_negative_bracket(V: Potential, xs: np.ndarray) -> np.ndarray:
    """1 + V''/(4V^2) + 5V'^2/(16|V|^3); U = V times this for alpha = -V'/(4V)."""
    v, v1, v2, _ = _real_derivatives(V, np.asarray(xs, dtype=float))
    _require_sign(v, xs, -1)
    return 1.0 + v2 / (4.0 * v * v) + 5.0 * v1 * v1 / (16.0 * np.abs(v) ** 3)


def check_wkb_negative(V: Potential, xs: np.ndarray) -> None:
    """-V''/(4V^2) - 5V'^2/(16|V|^3) < 1 at every x."""
    bracket = wkb_negative_bracket(V, xs)
    bad = bracket <= 0.0
    if np.any(bad):
        i = int(np.argmax(bad))
        raise HypothesisViolated(f"WKB hypothesis fails for V<0: bracket {bracket[i]:.6g} <= 0",
                                 x=float(xs[i]))


def wkb_positive_brackets(V: Potential, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    The correction terms of the V > 0 WKB estimate; U = (3V/4)(1 + 2 b1/3)
    and b2 enters the growth condition U' + 4 alpha U >= 0.
        b1 = -(5/8) V'^2/V^3 + V''/(2V^2)
        b2 = -(5/12) V'^2/V^3 + (5/8) V'^3/V^(9/2) + V''/(3V^2)
             - (3/4) V'V''/V^(7/2) + V'''/(6V^(5/2))
    """
    xs = np.asarray(xs, dtype=float)
    v, v1, v2, v3 = _real_derivatives(V, xs)
    _require_sign(v, xs, 1)
    b1 = -(5.0 / 8.0) * v1 ** 2 / v ** 3 + v2 / (2.0 * v ** 2)
    b2 = (-(5.0 / 12.0) * v1 ** 2 / v ** 3 + (5.0 / 8.0) * v1 ** 3 / v ** 4.5
          + v2 / (3.0 * v ** 2) - 0.75 * v1 * v2 / v ** 3.5 + v3 / (6.0 * v ** 2.5))
    return b1, b2


def check_wkb_positive(V: Potential, xs: np.ndarray) -> None:
    b1, b2 = wkb_positive_brackets(V, xs)
    for name, b in (("first", b1), ("second", b2)):
        bad = b <= -1.0
        if np.any(bad):
            i = int(np.argmax(bad))
            raise HypothesisViolated(f"WKB hypothesis fails for V>0: {name} bracket {b[i]:.6g} <= -1",
                                     x=float(xs[i]))
