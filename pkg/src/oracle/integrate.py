"""
Reference solutions of y' = V - y^2 and phi'' = V phi.

Both use scipy's DOP853 (embedded 8(5,3) pair with dense output) directly on
complex states, evaluated at the grid points.
"""
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.integrate import solve_ivp

from ..core.errors import BlowUp
from ..core.grid import Grid
from ..potential.potentials import Potential

logger = logging.getLogger(__name__)

BLOWUP_LIMIT = 1e8
DEFAULT_ORACLE_TOL = 1e-10
MIN_TOL = 1e-13
MAX_TOL = 1e-6
ZERO_PHI_EPS = 1e-300

GridLike = Union[Grid, np.ndarray]


@dataclass(frozen=True, eq=False)
class OracleSolution:
    x: np.ndarray
    y: np.ndarray
    tol: float
    method: str
    nfev: int = 0

    def rows(self):
        return [{"x": float(x), "re_y": float(y.real), "im_y": float(y.imag)}
                for x, y in zip(self.x, self.y)]


@dataclass(frozen=True, eq=False)
class SchrodingerSolution:
    x: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    tol: float
    nfev: int = 0

    @property
    def y(self) -> np.ndarray:
        """phi'/phi, NaN where phi vanishes."""
        out = np.full(self.phi.shape, np.nan + 0j)
        ok = np.abs(self.phi) > ZERO_PHI_EPS
        out[ok] = self.dphi[ok] / self.phi[ok]
        return out

    def as_oracle(self) -> OracleSolution:
        return OracleSolution(x=self.x, y=self.y, tol=self.tol, method="schrodinger", nfev=self.nfev)


def _points(grid: GridLike) -> np.ndarray:
    pts = grid.points if isinstance(grid, Grid) else np.asarray(grid, dtype=float)
    if pts.ndim != 1 or pts.size < 1 or np.any(np.diff(pts) <= 0.0):
        raise ValueError("Oracle needs increasing sample points")
    return pts


def _check_tol(tol: float):
    if not MIN_TOL <= tol <= MAX_TOL:
        raise ValueError(f"Oracle tolerance must lie in [{MIN_TOL:g}, {MAX_TOL:g}], got {tol:g}")


def integrate_riccati(V: Potential, y0: complex, grid: GridLike,
                      tol: float = DEFAULT_ORACLE_TOL) -> OracleSolution:
    _check_tol(tol)
    xs = _points(grid)
    if xs.size == 1:
        return OracleSolution(x=xs, y=np.array([complex(y0)]), tol=tol, method="riccati")

    def rhs(x, y):
        return V.eval(x) - y * y

    def blow_up(x, y):
        return BLOWUP_LIMIT - abs(y[0])

    blow_up.terminal = True
    sol = solve_ivp(rhs, (xs[0], xs[-1]), np.array([complex(y0)]), method="DOP853", t_eval=xs,
                    rtol=tol, atol=tol, events=blow_up)
    if sol.t_events[0].size:
        raise BlowUp(f"Riccati solution exceeds {BLOWUP_LIMIT:g}", x=float(sol.t_events[0][0]))
    if not sol.success:
        raise BlowUp(f"Riccati integration failed: {sol.message}", x=float(sol.t[-1]))
    return OracleSolution(x=xs, y=sol.y[0], tol=tol, method="riccati", nfev=int(sol.nfev))


def integrate_schrodinger(V: Potential, phi0: complex, dphi0: complex, grid: GridLike,
                          tol: float = DEFAULT_ORACLE_TOL) -> SchrodingerSolution:
    _check_tol(tol)
    xs = _points(grid)
    if xs.size == 1:
        return SchrodingerSolution(x=xs, phi=np.array([complex(phi0)]),
                                   dphi=np.array([complex(dphi0)]), tol=tol)

    def rhs(x, u):
        return np.array([u[1], V.eval(x) * u[0]])

    sol = solve_ivp(rhs, (xs[0], xs[-1]), np.array([complex(phi0), complex(dphi0)]),
                    method="DOP853", t_eval=xs, rtol=tol, atol=tol)
    if not sol.success:
        raise ValueError(f"Schrodinger integration failed: {sol.message}")
    return SchrodingerSolution(x=xs, phi=sol.y[0], dphi=sol.y[1], tol=tol, nfev=int(sol.nfev))


def wronskian_amplitude(phi, dphi):
    """Im(conj(phi) phi'), constant in x for real V."""
    return np.imag(np.conj(phi) * dphi)


def amplitude_from_wronskian(w: float, y):
    """|phi|^2 = w / Im y."""
    im = np.imag(y)
    if np.any(im == 0.0):
        raise ValueError("Im y vanishes; amplitude is undetermined")
    return w / im
