"""
Piecewise approximate solutions glued along a region plan.

Each piece carries y~ = phi~'/phi~ and the potential V~ = y~' + y~^2 it solves
exactly. Glueing matches y~ at every region boundary, which is C^1-glueing of
phi~ up to an overall constant.

A WKB piece is the combination p*phi_s + q*phi_{-s} of both WKB waves; the
ratio q/p is fixed by the incoming y~. Both waves solve phi'' = V~ phi with
the same closed-form V~, so y~ is continuous while V~ keeps its formula.
"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import GridError, ZeroWavefunction
from ..core.grid import Grid, cumulative_integral
from .airy import AiryAnsatz
from .wkb import WkbAnsatz, dvtilde_wkb, vtilde_wkb, wkb_y

logger = logging.getLogger(__name__)

ZERO_WAVE_EPS = 1e-12
PURE_WAVE_EPS = 1e-14

Ansatz = Union[WkbAnsatz, AiryAnsatz]


@dataclass(frozen=True, eq=False)
class Region:
    interval: Tuple[float, float]
    ansatz: Ansatz
    prefer: Optional[str] = None     # preferred branch "A" or "B" when both apply
    mechanism: str = "auto"          # "auto" (branches A/B) or "real" (real-centred disks)

    def __post_init__(self):
        if self.prefer not in (None, "A", "B"):
            raise ValueError(f"Branch preference must be A, B or None, got {self.prefer!r}")
        if self.mechanism not in ("auto", "real"):
            raise ValueError(f"Unknown region mechanism {self.mechanism!r}")

    @property
    def kind(self) -> str:
        return "wkb" if isinstance(self.ansatz, WkbAnsatz) else "airy"


@dataclass(frozen=True, eq=False)
class RegionPlan:
    regions: Tuple[Region, ...]

    def __post_init__(self):
        regions = tuple(self.regions)
        if not regions:
            raise ValueError("Region plan is empty")
        for left, right in zip(regions, regions[1:]):
            if left.interval[1] != right.interval[0]:
                raise ValueError(
                    f"Regions {left.interval} and {right.interval} do not share an endpoint")
        for region in regions:
            if not region.interval[1] > region.interval[0]:
                raise ValueError(f"Empty region {region.interval}")
        object.__setattr__(self, "regions", regions)

    @property
    def domain(self) -> Tuple[float, float]:
        return (self.regions[0].interval[0], self.regions[-1].interval[1])

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return tuple(r.interval[0] for r in self.regions[1:])

    def grid(self, n: int) -> Grid:
        a, b = self.domain
        return Grid.uniform(a, b, n, self.breakpoints)

    def __len__(self) -> int:
        return len(self.regions)

    def __iter__(self):
        return iter(self.regions)


@dataclass(frozen=True, eq=False)
class GluedApprox:
    plan: RegionPlan
    grid: Grid
    ytilde: Tuple[np.ndarray, ...]
    vtilde: Tuple[np.ndarray, ...]
    dvtilde: Tuple[np.ndarray, ...]

    @property
    def alpha(self) -> List[np.ndarray]:
        return [y.real for y in self.ytilde]

    @property
    def beta_tilde(self) -> List[np.ndarray]:
        return [y.imag for y in self.ytilde]

    def ytilde_prime(self) -> List[np.ndarray]:
        return [v - y * y for y, v in zip(self.ytilde, self.vtilde)]

    def alpha_pieces(self, grid: Grid) -> List[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        """(alpha, alpha', alpha'') on every piece, all in closed form."""
        if grid is not self.grid and not np.array_equal(grid.points, self.grid.points):
            raise GridError("Approximation was glued on a different grid")
        out = []
        for y, v, dv in zip(self.ytilde, self.vtilde, self.dvtilde):
            dy = v - y * y
            out.append((y.real, dy.real, (dv - 2.0 * y * dy).real))
        return out

    def vtilde_jumps(self) -> List[Dict]:
        jumps = []
        for k, x in enumerate(self.grid.breakpoints):
            left, right = self.vtilde[k][-1], self.vtilde[k + 1][0]
            jumps.append({"x": x, "left": complex(left), "right": complex(right),
                          "jump": abs(right - left)})
        return jumps

    def ytilde_mismatch(self) -> float:
        gaps = [abs(self.ytilde[k][-1] - self.ytilde[k + 1][0])
                for k in range(len(self.ytilde) - 1)]
        return float(max(gaps, default=0.0))

    def log_wavefunction(self) -> np.ndarray:
        """log phi~ = ∫ y~ with log phi~(left end) = 0; never exponentiated here."""
        return cumulative_integral(self.grid, list(self.ytilde))

    def flat(self, name: str) -> np.ndarray:
        return self.grid.flatten(list(getattr(self, name)))


def _wkb_piece(ansatz: WkbAnsatz, xs: np.ndarray, y_left: complex):
    s = ansatz.sign
    root = ansatz.sqrt_vwkb(xs)
    own = wkb_y(ansatz, xs)
    other = own - 2.0 * s * root
    p = y_left - other[0]
    q = own[0] - y_left
    if abs(q) <= PURE_WAVE_EPS * (abs(p) + abs(own[0]) + 1.0):
        y = own
    else:
        # log of phi_{-s}/phi_s up to a constant, zero at the left end
        log_ratio = -2.0 * s * _running_integral(root, xs)
        y = np.empty_like(own)
        small = log_ratio.real <= 0.0
        ratio = np.exp(log_ratio[small])
        den = p + q * ratio
        _check_denominator(den, np.abs(p) + np.abs(q * ratio), xs[small])
        y[small] = (p * own[small] + q * ratio * other[small]) / den
        inv = np.exp(-log_ratio[~small])
        den = p * inv + q
        _check_denominator(den, np.abs(p * inv) + np.abs(q), xs[~small])
        y[~small] = (p * inv * own[~small] + q * other[~small]) / den
    return y, vtilde_wkb(ansatz, xs), dvtilde_wkb(ansatz, xs)


def _airy_piece(ansatz: AiryAnsatz, xs: np.ndarray, y_left: complex):
    p1, d1, p2, d2 = ansatz.basis(xs)
    w = p1[0] * d2[0] - d1[0] * p2[0]
    c1 = (d2[0] - p2[0] * y_left) / w
    c2 = (p1[0] * y_left - d1[0]) / w
    phi = c1 * p1 + c2 * p2
    dphi = c1 * d1 + c2 * d2
    _check_denominator(phi, np.abs(c1 * p1) + np.abs(c2 * p2), xs)
    v = ansatz.va.eval(xs)
    return dphi / phi, v, np.full_like(v, ansatz.va.b)


def _running_integral(values: np.ndarray, xs: np.ndarray) -> np.ndarray:
    single = Grid(xs)
    return cumulative_integral(single, values)


def _check_denominator(den: np.ndarray, scale: np.ndarray, xs: np.ndarray):
    if den.size == 0:
        return
    bad = np.abs(den) < ZERO_WAVE_EPS * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise ZeroWavefunction("Approximate wavefunction vanishes", x=float(xs[np.argmax(bad)]))


def glue(plan: RegionPlan, grid: Grid,
         seed: Optional[Tuple[complex, complex]] = None) -> GluedApprox:
    """
    Glue the plan's pieces on grid. seed = (phi, phi') at the left end; when
    omitted the first region must be WKB and starts as its pure wave.
    """
    if tuple(grid.edges) != (plan.domain[0], *plan.breakpoints, plan.domain[1]):
        raise GridError("Grid breakpoints must equal the region boundaries")
    first = plan.regions[0].ansatz
    if seed is None:
        if not isinstance(first, WkbAnsatz):
            raise ValueError("A seed (phi, phi') is required when the plan starts in an Airy region")
        y_left = complex(wkb_y(first, plan.domain[0]))
    else:
        phi0, dphi0 = (complex(v) for v in seed)
        if abs(phi0) < ZERO_WAVE_EPS * (1.0 + abs(dphi0)):
            raise ZeroWavefunction("Seed wavefunction vanishes", x=plan.domain[0])
        y_left = dphi0 / phi0

    ys, vs, dvs = [], [], []
    for k, region in enumerate(plan.regions):
        xs = grid.piece_points(k)
        if isinstance(region.ansatz, WkbAnsatz):
            y, v, dv = _wkb_piece(region.ansatz, xs, y_left)
        else:
            y, v, dv = _airy_piece(region.ansatz, xs, y_left)
        logger.debug(f"Glued {region.kind} piece {region.interval}: y~ from {y[0]:.6g} to {y[-1]:.6g}")
        ys.append(np.asarray(y, dtype=complex))
        vs.append(np.asarray(v, dtype=complex))
        dvs.append(np.asarray(dv, dtype=complex))
        y_left = complex(y[-1])
    return GluedApprox(plan=plan, grid=grid, ytilde=tuple(ys), vtilde=tuple(vs), dvtilde=tuple(dvs))
