"""
WKB approximations phi = V_WKB^(-1/4) exp(±∫ sqrt(V_WKB)).

The square root follows one continuous branch across the whole region,
anchored at the principal value at the region's left end (a point on the
negative real axis counts as arg = +pi). Along a region where V_WKB winds
across the negative real axis the principal root would jump; this one does not.
"""
import math
from dataclasses import dataclass, field
from typing import Tuple, Union

import numpy as np

from ..core.errors import ZeroPotential
from ..potential.potentials import Potential

ZERO_POTENTIAL_EPS = 1e-12
BRANCH_SAMPLES = 513


def _parse_sign(sign: Union[int, str]) -> int:
    if sign in (1, "+", "+1"):
        return 1
    if sign in (-1, "-", "-1"):
        return -1
    raise ValueError(f"WKB sign must be + or -, got {sign!r}")


@dataclass(frozen=True, eq=False)
class WkbAnsatz:
    vwkb: Potential
    sign: int
    region: Tuple[float, float]
    _branch_x: np.ndarray = field(init=False, repr=False)
    _branch_theta: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "sign", _parse_sign(self.sign))
        a, b = (float(v) for v in self.region)
        if not b > a:
            raise ValueError(f"Empty WKB region {self.region}")
        object.__setattr__(self, "region", (a, b))
        xs = np.linspace(a, b, BRANCH_SAMPLES)
        values = np.asarray(self.vwkb.eval(xs), dtype=complex)
        mags = np.abs(values)
        if mags.min() < ZERO_POTENTIAL_EPS * max(1.0, mags.max()):
            raise ZeroPotential("WKB potential vanishes in its region", x=float(xs[np.argmin(mags)]))
        angles = np.angle(values)
        if values[0].imag == 0.0 and values[0].real < 0.0:
            angles[0] = math.pi
        object.__setattr__(self, "_branch_x", xs)
        object.__setattr__(self, "_branch_theta", np.unwrap(angles))

    def contains(self, x) -> bool:
        a, b = self.region
        slack = 1e-12 * (1.0 + abs(b - a))
        return bool(np.all((np.asarray(x) >= a - slack) & (np.asarray(x) <= b + slack)))

    def sqrt_vwkb(self, x):
        """Continuous branch of sqrt(V_WKB) on the region."""
        values = np.asarray(self.vwkb.eval(x), dtype=complex)
        reference = np.interp(x, self._branch_x, self._branch_theta)
        ang = np.angle(values)
        turns = np.round((reference - ang) / (2.0 * math.pi))
        theta = ang + 2.0 * math.pi * turns
        root = np.sqrt(np.abs(values)) * np.exp(0.5j * theta)
        return root if np.ndim(x) else complex(root)

    def _checked(self, x):
        if not self.contains(x):
            raise ValueError(f"x outside WKB region {self.region}")
        V, V1, V2, V3 = self.vwkb.derivatives(x)
        if np.any(np.abs(V) < ZERO_POTENTIAL_EPS):
            raise ZeroPotential("WKB potential vanishes", x=float(np.atleast_1d(x)[0]))
        return V, V1, V2, V3


def wkb_y(ansatz: WkbAnsatz, x):
    """Logarithmic derivative of the WKB wave: ±sqrt(V) - V'/(4V)."""
    V, V1, _, _ = ansatz._checked(x)
    return ansatz.sign * ansatz.sqrt_vwkb(x) - V1 / (4.0 * V)


def vtilde_wkb(ansatz: WkbAnsatz, x):
    """Potential solved exactly by the WKB wave."""
    V, V1, V2, _ = ansatz._checked(x)
    return V + (5.0 / 16.0) * V1 ** 2 / V ** 2 - V2 / (4.0 * V)


def dvtilde_wkb(ansatz: WkbAnsatz, x):
    V, V1, V2, V3 = ansatz._checked(x)
    return (V1 + (7.0 / 8.0) * V1 * V2 / V ** 2 - (5.0 / 8.0) * V1 ** 3 / V ** 3
            - V3 / (4.0 * V))


def wkb_condition(V: Potential, x: float) -> float:
    """|V''/V^2| + |V'^2/V^3|; small where the WKB wave is accurate."""
    v = complex(V.eval(x))
    if abs(v) < ZERO_POTENTIAL_EPS:
        raise ZeroPotential("Potential vanishes", x=x)
    v1 = complex(V.d1(x))
    v2 = complex(V.d2(x))
    return abs(v2 / v ** 2) + abs(v1 ** 2 / v ** 3)


def wkb_condition_profile(V: Potential, xs: np.ndarray) -> np.ndarray:
    v = np.asarray(V.eval(xs), dtype=complex)
    if np.any(np.abs(v) < ZERO_POTENTIAL_EPS):
        raise ZeroPotential("Potential vanishes", x=float(xs[np.argmin(np.abs(v))]))
    v1 = np.asarray(V.d1(xs), dtype=complex)
    v2 = np.asarray(V.d2(xs), dtype=complex)
    return np.abs(v2 / v ** 2) + np.abs(v1 ** 2 / v ** 3)
