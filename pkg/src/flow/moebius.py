"""
Circle flow of the Riccati equation y' = V - y^2 for constant V.

With zeta = sqrt(V) the solution operator is the fractional linear map
    y(x) = zeta (c y0 + zeta s) / (s y0 + zeta c),  c = cosh(zeta x), s = sinh(zeta x),
which maps circles to circles. c and s are evaluated scaled by exp(-|Re zeta x|)
so that nothing overflows for large x.
"""
import cmath
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.disk import Disk
from ..core.errors import DegenerateToLine, NotImaginary, PoleEncountered

logger = logging.getLogger(__name__)

TANH_SATURATION = 350.0
POLE_EPS = 1e-12
DEGENERACY_EPS = 1e-12


def _scaled_cosh_sinh(z: complex) -> Tuple[complex, complex, float]:
    """(cosh z, sinh z) multiplied by exp(-|Re z|), and |Re z|."""
    r = abs(z.real)
    up = cmath.exp(z - r)
    down = cmath.exp(-z - r)
    return 0.5 * (up + down), 0.5 * (up - down), r


def stable_tanh(z: complex) -> complex:
    z = complex(z)
    if abs(z.real) > TANH_SATURATION:
        return complex(math.copysign(1.0, z.real), 0.0)
    c, s, _ = _scaled_cosh_sinh(z)
    if c == 0:
        return complex(math.inf, math.inf)
    return s / c


@dataclass(frozen=True)
class ConstantFlow:
    zeta: complex

    def __post_init__(self):
        zeta = complex(self.zeta)
        if zeta == 0 or not (math.isfinite(zeta.real) and math.isfinite(zeta.imag)):
            raise ValueError(f"zeta must be finite and nonzero, got {self.zeta}")
        object.__setattr__(self, "zeta", zeta)

    @classmethod
    def from_potential(cls, V: complex) -> "ConstantFlow":
        """Principal branch zeta = sqrt(V); use ConstantFlow(-zeta) for the other one."""
        return cls(cmath.sqrt(complex(V)))

    @property
    def V(self) -> complex:
        return self.zeta * self.zeta

    @property
    def pole_eps(self) -> float:
        return POLE_EPS * (1.0 + abs(self.zeta))

    @property
    def degeneracy_eps(self) -> float:
        return DEGENERACY_EPS * (1.0 + abs(self.zeta)) ** 2


@dataclass(frozen=True)
class FixedPoints:
    stable: Optional[complex]
    unstable: Optional[complex]
    both_centers: bool = False


def exact_solution(flow: ConstantFlow, y0: complex, x: float) -> complex:
    zeta = flow.zeta
    c, s, _ = _scaled_cosh_sinh(zeta * x)
    den = s * y0 + zeta * c
    num = c * y0 + zeta * s
    # a pole is a vanishing denominator over a non-vanishing numerator
    if den == 0 or abs(den) < flow.pole_eps * abs(num):
        raise PoleEncountered("Riccati solution has a pole before this point", x=x)
    return zeta * num / den


def propagate_circle(flow: ConstantFlow, m0: complex, R0: float, x: float) -> Disk:
    """Image at x of the circle |y - m0| = R0 placed at x = 0."""
    if R0 < 0:
        raise ValueError(f"R0 must be >= 0, got {R0}")
    zeta = flow.zeta
    m0 = complex(m0)
    c, s, r = _scaled_cosh_sinh(zeta * x)
    lower = s * m0 + zeta * c
    den = abs(lower) ** 2 - R0 * R0 * abs(s) ** 2
    if den <= flow.degeneracy_eps * abs(c) ** 2:
        raise DegenerateToLine("Circle degenerates to a straight line", x=x)
    upper = c * m0 + zeta * s
    center = zeta * (upper * lower.conjugate() - R0 * R0 * c * s.conjugate()) / den
    radius = R0 * abs(zeta) ** 2 * math.exp(-2.0 * r) / den
    return Disk(center, radius)


def classify_fixed_points(flow: ConstantFlow) -> FixedPoints:
    zeta = flow.zeta
    if abs(zeta.real) <= POLE_EPS * (1.0 + abs(zeta)):
        return FixedPoints(stable=None, unstable=None, both_centers=True)
    if zeta.real > 0:
        return FixedPoints(stable=zeta, unstable=-zeta)
    return FixedPoints(stable=-zeta, unstable=zeta)


def stationary_circle_centers(zeta: complex, R0: float) -> Tuple[complex, complex]:
    """Centers of the two circles of radius R0 left fixed by a purely oscillatory flow."""
    zeta = complex(zeta)
    if zeta == 0:
        raise ValueError("zeta must be nonzero")
    if abs(zeta.real) > POLE_EPS * (1.0 + abs(zeta)):
        raise NotImaginary(f"zeta={zeta} is not purely imaginary")
    if R0 < 0:
        raise ValueError(f"R0 must be >= 0, got {R0}")
    h = math.sqrt(R0 * R0 + abs(zeta) ** 2)
    return complex(0.0, h), complex(0.0, -h)


def circle_track(flow: ConstantFlow, m0: complex, R0: float, xs: Sequence[float]) -> List[Dict]:
    """One row per x; degenerate images are flagged instead of raised."""
    rows = []
    for x in xs:
        try:
            disk = propagate_circle(flow, m0, R0, x)
            rows.append({"x": x, "re_m": disk.alpha, "im_m": disk.beta, "R": disk.radius,
                         "degenerate": False})
        except DegenerateToLine:
            logger.warning(f"Circle degenerates at x={x}")
            rows.append({"x": x, "re_m": math.nan, "im_m": math.nan, "R": math.nan,
                         "degenerate": True})
    return rows
