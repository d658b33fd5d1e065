"""
Complex potentials V(x) with analytic derivatives up to third order.

All evaluators are vectorized: they accept a float or a numpy array and
return complex values of matching shape.
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

WHOLE_LINE = (-math.inf, math.inf)


class Potential(ABC):
    """A complex potential together with its first three derivatives."""

    domain: Tuple[float, float] = WHOLE_LINE

    @abstractmethod
    def eval(self, x):
        ...

    @abstractmethod
    def d1(self, x):
        ...

    @abstractmethod
    def d2(self, x):
        ...

    @abstractmethod
    def d3(self, x):
        ...

    @abstractmethod
    def to_dict(self) -> Dict:
        ...

    def __call__(self, x):
        return self.eval(x)

    def derivatives(self, x):
        return self.eval(x), self.d1(x), self.d2(x), self.d3(x)

    @property
    def is_real(self) -> bool:
        return False

    def contains(self, x: float) -> bool:
        lo, hi = self.domain
        return lo <= x <= hi


def _cplx(x, value):
    return np.asarray(value, dtype=complex) if np.ndim(x) else complex(value)


@dataclass(frozen=True)
class SinePotential(Potential):
    """V(x) = prefactor * (offset + (1 + i*c_im) * sin^2 x)."""

    prefactor: float
    c_im: float = 0.0
    offset: float = -0.5
    domain: Tuple[float, float] = (0.0, math.pi / 2)

    @property
    def _k(self) -> complex:
        return self.prefactor * complex(1.0, self.c_im)

    def eval(self, x):
        return _cplx(x, self.prefactor * self.offset + self._k * np.sin(x) ** 2)

    def d1(self, x):
        return _cplx(x, self._k * np.sin(2.0 * x))

    def d2(self, x):
        return _cplx(x, 2.0 * self._k * np.cos(2.0 * x))

    def d3(self, x):
        return _cplx(x, -4.0 * self._k * np.sin(2.0 * x))

    @property
    def is_real(self) -> bool:
        return self.c_im == 0.0

    def to_dict(self) -> Dict:
        return {"kind": "sine", "prefactor": self.prefactor, "c_im": self.c_im,
                "offset": self.offset, "domain": list(self.domain)}


@dataclass(frozen=True)
class LinearPotential(Potential):
    """V_A(x) = a + b*x, the potential of an Airy region."""

    a: complex
    b: complex
    domain: Tuple[float, float] = WHOLE_LINE

    def eval(self, x):
        return _cplx(x, self.a + self.b * np.asarray(x, dtype=float))

    def d1(self, x):
        return _cplx(x, self.b * np.ones_like(np.asarray(x, dtype=float)))

    def d2(self, x):
        return _cplx(x, np.zeros_like(np.asarray(x, dtype=float)))

    def d3(self, x):
        return self.d2(x)

    @property
    def is_real(self) -> bool:
        return complex(self.a).imag == 0.0 and complex(self.b).imag == 0.0

    def shifted_slope(self, x0: float, b_offset: float) -> "LinearPotential":
        """Same value at x0, slope b + b_offset."""
        b_new = self.b + b_offset
        return LinearPotential(self.eval(x0) - b_new * x0, b_new, self.domain)

    def to_dict(self) -> Dict:
        a, b = complex(self.a), complex(self.b)
        return {"kind": "linear", "a": [a.real, a.imag], "b": [b.real, b.imag]}


@dataclass(frozen=True, eq=False)
class TabulatedPotential(Potential):
    """Cubic-spline interpolant of sampled real and imaginary parts."""

    x: Tuple[float, ...]
    re: Tuple[float, ...]
    im: Tuple[float, ...]
    _re_spline: CubicSpline = field(init=False, repr=False)
    _im_spline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        xs = np.asarray(self.x, dtype=float)
        if xs.size < 4:
            raise ValueError("Tabulated potential needs at least 4 samples")
        if len(self.re) != xs.size or len(self.im) != xs.size:
            raise ValueError("Tabulated potential: x, re and im must have equal length")
        object.__setattr__(self, "_re_spline", CubicSpline(xs, np.asarray(self.re, dtype=float)))
        object.__setattr__(self, "_im_spline", CubicSpline(xs, np.asarray(self.im, dtype=float)))

    @property
    def domain(self) -> Tuple[float, float]:
        return (float(self.x[0]), float(self.x[-1]))

    def _eval(self, x, nu: int):
        return _cplx(x, self._re_spline(x, nu) + 1j * self._im_spline(x, nu))

    def eval(self, x):
        return self._eval(x, 0)

    def d1(self, x):
        return self._eval(x, 1)

    def d2(self, x):
        return self._eval(x, 2)

    def d3(self, x):
        return self._eval(x, 3)

    @property
    def is_real(self) -> bool:
        return not np.any(np.asarray(self.im))

    def to_dict(self) -> Dict:
        return {"kind": "table", "x": list(self.x), "re": list(self.re), "im": list(self.im)}


@dataclass(frozen=True)
class ScaledPotential(Potential):
    """factor * base, with all derivatives scaled alike."""

    base: Potential
    factor: float

    @property
    def domain(self) -> Tuple[float, float]:
        return self.base.domain

    def eval(self, x):
        return self.factor * self.base.eval(x)

    def d1(self, x):
        return self.factor * self.base.d1(x)

    def d2(self, x):
        return self.factor * self.base.d2(x)

    def d3(self, x):
        return self.factor * self.base.d3(x)

    @property
    def is_real(self) -> bool:
        return self.base.is_real

    def to_dict(self) -> Dict:
        return {"kind": "scaled", "factor": self.factor, "base": self.base.to_dict()}


def make_sine_potential(prefactor: float, c_im: float, offset: float = -0.5) -> SinePotential:
    if not prefactor > 0:
        raise ValueError(f"prefactor must be > 0, got {prefactor}")
    return SinePotential(float(prefactor), float(c_im), float(offset))


def make_linear_potential(a: complex, b: complex) -> LinearPotential:
    return LinearPotential(complex(a), complex(b))


def make_constant_potential(v: complex) -> LinearPotential:
    return LinearPotential(complex(v), 0j)


def make_table_potential(x: Sequence[float], re: Sequence[float],
                         im: Sequence[float]) -> TabulatedPotential:
    return TabulatedPotential(tuple(float(v) for v in x), tuple(float(v) for v in re),
                              tuple(float(v) for v in im))


def linearize_at(V: Potential, x0: float) -> LinearPotential:
    """First-order Taylor polynomial of V at x0."""
    if not V.contains(x0):
        raise ValueError(f"x0={x0} outside potential domain {V.domain}")
    v0 = complex(V.eval(x0))
    b = complex(V.d1(x0))
    return LinearPotential(v0 - x0 * b, b)


def scale(V: Potential, lam: float) -> Potential:
    if not lam > 0:
        raise ValueError(f"Scaling factor must be > 0, got {lam}")
    if lam == 1.0:
        return V
    if isinstance(V, ScaledPotential):
        return scale(V.base, V.factor * lam)
    return ScaledPotential(V, float(lam))


def damp(V: Potential, factor: float) -> Potential:
    """factor * V for factor in (0, 1]; meant for WKB ansatz potentials only."""
    if not 0.0 < factor <= 1.0:
        raise ValueError(f"Damping factor must lie in (0, 1], got {factor}")
    return scale(V, factor)


def potential_from_dict(data: Dict) -> Potential:
    kind = data.get("kind")
    if kind == "sine":
        V = make_sine_potential(data["prefactor"], data.get("c_im", 0.0), data.get("offset", -0.5))
        if "domain" in data:
            V = SinePotential(V.prefactor, V.c_im, V.offset, tuple(data["domain"]))
        return V
    if kind == "linear":
        return make_linear_potential(complex(*data["a"]), complex(*data["b"]))
    if kind == "table":
        return make_table_potential(data["x"], data["re"], data["im"])
    if kind == "scaled":
        return scale(potential_from_dict(data["base"]), data["factor"])
    raise ValueError(f"Unknown potential kind: {kind!r}")
