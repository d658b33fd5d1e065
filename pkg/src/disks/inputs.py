"""
Grid-sampled ingredients of the disk estimates.

For a center function alpha the engine needs
    U = Re V - alpha^2 - alpha'      and      sigma = exp(∫ 2 alpha),
plus the chosen W (W = U by default) and analytic derivatives of all of
them on every smooth piece.
"""
from dataclasses import dataclass, replace
from typing import List, Optional, Protocol, Sequence, Tuple

import numpy as np

from ..approximants.glue import GluedApprox
from ..core.disk import Disk
from ..core.errors import ConstraintViolated
from ..core.grid import Grid, cumulative_integral
from ..potential.potentials import Potential

INITIAL_ALGEBRA_TOL = 1e-8


class AlphaSource(Protocol):
    def alpha_pieces(self, grid: Grid) -> List[Tuple[np.ndarray, np.ndarray, np.ndarray]]:
        ...


@dataclass(frozen=True)
class ConstantAlpha:
    """alpha ≡ value."""

    value: float = 0.0

    def alpha_pieces(self, grid: Grid):
        out = []
        for k in range(grid.n_pieces):
            n = grid.piece_points(k).size
            out.append((np.full(n, float(self.value)), np.zeros(n), np.zeros(n)))
        return out


@dataclass(frozen=True, eq=False)
class PieceInputs:
    x: np.ndarray
    alpha: np.ndarray
    dalpha: np.ndarray
    U: np.ndarray
    dU: np.ndarray
    W: np.ndarray
    dW: np.ndarray
    re_v: np.ndarray
    im_v: np.ndarray
    log_sigma: np.ndarray
    vtilde: Optional[np.ndarray] = None
    dvtilde: Optional[np.ndarray] = None
    beta_tilde: Optional[np.ndarray] = None
    dre_v: Optional[np.ndarray] = None

    @property
    def sigma(self) -> np.ndarray:
        return np.exp(self.log_sigma)

    @property
    def interval(self) -> Tuple[float, float]:
        return float(self.x[0]), float(self.x[-1])

    @property
    def size(self) -> int:
        return self.x.size


@dataclass(frozen=True, eq=False)
class EstimateInputs:
    V: Potential
    grid: Grid
    pieces: Tuple[PieceInputs, ...]
    approx: Optional[GluedApprox] = None

    def piece(self, k: int) -> PieceInputs:
        return self.pieces[k]

    def locate(self, x: float) -> Tuple[int, int]:
        """(piece, local index) of grid point x; breakpoints resolve to the right piece."""
        k = self.grid.piece_index(x)
        i = self.grid.index_of(x) - self.grid.piece_slices[k][0]
        return k, i

    def piece_for(self, interval: Sequence[float]) -> int:
        a, b = (float(v) for v in interval)
        for k in range(self.grid.n_pieces):
            lo, hi = self.pieces[k].interval
            if np.isclose(lo, a, atol=1e-12) and np.isclose(hi, b, atol=1e-12):
                return k
        raise ValueError(f"Interval {interval} is not a smooth piece of the grid {self.grid.edges}")

    def flat(self, name: str) -> np.ndarray:
        return self.grid.flatten([getattr(p, name) for p in self.pieces])

    @property
    def sigma(self) -> np.ndarray:
        return np.exp(self.flat("log_sigma"))

    def with_W(self, k: int, W: np.ndarray, dW: np.ndarray) -> "EstimateInputs":
        """Replace W on piece k (the default everywhere is W = U)."""
        pieces = list(self.pieces)
        pieces[k] = replace(pieces[k], W=np.asarray(W, dtype=float), dW=np.asarray(dW, dtype=float))
        return replace(self, pieces=tuple(pieces))


def compute_U(v, alpha, dalpha) -> np.ndarray:
    """Re V - alpha^2 - alpha' pointwise."""
    return np.real(v) - np.asarray(alpha) ** 2 - np.asarray(dalpha)


def build_inputs(V: Potential, grid: Grid, alpha_source: AlphaSource) -> EstimateInputs:
    triples = alpha_source.alpha_pieces(grid)
    approx = alpha_source if isinstance(alpha_source, GluedApprox) else None
    log_sigma = grid.split(2.0 * cumulative_integral(grid, [t[0] for t in triples]))
    pieces = []
    for k, (alpha, dalpha, ddalpha) in enumerate(triples):
        xs = grid.piece_points(k)
        v = np.asarray(V.eval(xs), dtype=complex)
        dv = np.asarray(V.d1(xs), dtype=complex)
        U = compute_U(v, alpha, dalpha)
        dU = dv.real - 2.0 * alpha * dalpha - ddalpha
        extra = {}
        if approx is not None:
            extra = {"vtilde": approx.vtilde[k], "dvtilde": approx.dvtilde[k],
                     "beta_tilde": approx.ytilde[k].imag}
        pieces.append(PieceInputs(x=xs, alpha=np.asarray(alpha, dtype=float),
                                  dalpha=np.asarray(dalpha, dtype=float), U=U, dU=dU,
                                  W=U.copy(), dW=dU.copy(), re_v=v.real, im_v=v.imag,
                                  log_sigma=np.asarray(log_sigma[k], dtype=float),
                                  dre_v=dv.real, **extra))
    return EstimateInputs(V=V, grid=grid, pieces=tuple(pieces), approx=approx)


def initial_disk(inputs: EstimateInputs, R0: float, half_plane: int = 1) -> Disk:
    """Disk at the left end with radius R0, centered on alpha, obeying R^2 - beta^2 = W."""
    p = inputs.pieces[0]
    W0 = float(p.W[0])
    if R0 * R0 < W0:
        raise ConstraintViolated(f"R0={R0} too small: need R0^2 >= W(x0) = {W0:.6g}", x=p.interval[0])
    beta0 = (1 if half_plane >= 0 else -1) * np.sqrt(R0 * R0 - W0)
    return Disk(complex(p.alpha[0], beta0), R0)


def check_initial_disk(inputs: EstimateInputs, init: Disk) -> None:
    p = inputs.pieces[0]
    alpha0, W0 = float(p.alpha[0]), float(p.W[0])
    if abs(init.alpha - alpha0) > INITIAL_ALGEBRA_TOL * (1.0 + abs(alpha0)):
        raise ConstraintViolated(
            f"Initial disk must be centered at alpha(x0)={alpha0:.12g}, got {init.alpha:.12g}",
            x=p.interval[0])
    gap = init.radius ** 2 - init.beta ** 2 - W0
    if abs(gap) > INITIAL_ALGEBRA_TOL * (1.0 + abs(W0)):
        raise ConstraintViolated(f"Initial disk violates R^2 - beta^2 = W (off by {gap:.3e})",
                                 x=p.interval[0])
