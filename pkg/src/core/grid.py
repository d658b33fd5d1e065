"""
Grids with breakpoints, per-piece quadrature and differentiation.

Quantities that may jump at breakpoints are stored per smooth piece, each
piece holding both of its endpoints. A "flat" array of length len(points)
uses the right-hand limit at interior breakpoints.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import cumulative_simpson

from .errors import GridError

DEFAULT_GRID_POINTS = 2048
MIN_INTERIOR_POINTS = 8

Sampled = Union[np.ndarray, Sequence[np.ndarray]]


@dataclass(frozen=True, eq=False)
class Grid:
    points: np.ndarray
    breakpoints: Tuple[float, ...] = ()
    _slices: Tuple[Tuple[int, int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 2:
            raise GridError("Grid needs a 1-D array of at least two points")
        if not np.all(np.isfinite(pts)):
            raise GridError("Grid points must be finite")
        if np.any(np.diff(pts) <= 0.0):
            raise GridError("Grid points must be strictly increasing")
        pts.setflags(write=False)
        bps = tuple(sorted(float(b) for b in self.breakpoints))
        cuts = [0]
        for b in bps:
            idx = int(np.searchsorted(pts, b))
            if idx >= pts.size or pts[idx] != b:
                raise GridError("Breakpoint is not a grid point", x=b)
            if idx == 0 or idx == pts.size - 1:
                raise GridError("Breakpoint must be interior", x=b)
            cuts.append(idx)
        cuts.append(pts.size - 1)
        slices = tuple((cuts[k], cuts[k + 1]) for k in range(len(cuts) - 1))
        for i0, i1 in slices:
            if i1 - i0 - 1 < MIN_INTERIOR_POINTS:
                raise GridError(
                    f"Piece [{pts[i0]:.6g}, {pts[i1]:.6g}] has {i1 - i0 - 1} interior points, "
                    f"need >= {MIN_INTERIOR_POINTS}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "_slices", slices)

    @classmethod
    def uniform(cls, a: float, b: float, n: int = DEFAULT_GRID_POINTS,
                breakpoints: Sequence[float] = ()) -> "Grid":
        """
        n equally spaced points on [a, b]; each breakpoint replaces the
        nearest grid point so that it lies on the grid exactly.
        """
        if not b > a:
            raise GridError(f"Empty interval [{a}, {b}]")
        pts = np.linspace(a, b, n)
        for bp in sorted(breakpoints):
            if not a < bp < b:
                raise GridError("Breakpoint outside the open interval", x=bp)
            idx = int(np.argmin(np.abs(pts - bp)))
            if idx == 0 or idx == n - 1:
                raise GridError("Breakpoint too close to the interval end", x=bp)
            pts[idx] = bp
        return cls(pts, tuple(breakpoints))

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])

    @property
    def edges(self) -> Tuple[float, ...]:
        return (self.a, *self.breakpoints, self.b)

    @property
    def n_pieces(self) -> int:
        return len(self._slices)

    @property
    def piece_slices(self) -> Tuple[Tuple[int, int], ...]:
        """Inclusive (first, last) index of each smooth piece."""
        return self._slices

    def piece_points(self, k: int) -> np.ndarray:
        i0, i1 = self._slices[k]
        return self.points[i0:i1 + 1]

    def piece_index(self, x: float) -> int:
        """Piece containing x; a breakpoint belongs to the piece on its right."""
        for k, (i0, i1) in enumerate(self._slices):
            if self.points[i0] <= x < self.points[i1]:
                return k
        if x == self.b:
            return self.n_pieces - 1
        raise GridError("Point outside the grid", x=x)

    def index_of(self, x: float) -> int:
        idx = int(np.searchsorted(self.points, x))
        if idx < self.points.size and np.isclose(self.points[idx], x, rtol=0.0, atol=1e-12):
            return idx
        if idx > 0 and np.isclose(self.points[idx - 1], x, rtol=0.0, atol=1e-12):
            return idx - 1
        raise GridError("Not a grid point", x=x)

    def split(self, values: Sampled) -> List[np.ndarray]:
        """Per-piece view of a flat or already split sampled function."""
        if isinstance(values, np.ndarray) and values.ndim == 1:
            if values.size != self.points.size:
                raise GridError(f"Expected {self.points.size} samples, got {values.size}")
            return [values[i0:i1 + 1] for i0, i1 in self._slices]
        pieces = [np.asarray(p) for p in values]
        if len(pieces) != self.n_pieces:
            raise GridError(f"Expected {self.n_pieces} pieces, got {len(pieces)}")
        for (i0, i1), p in zip(self._slices, pieces):
            if p.size != i1 - i0 + 1:
                raise GridError(f"Piece has {p.size} samples, expected {i1 - i0 + 1}")
        return pieces

    def flatten(self, pieces: Sequence[np.ndarray]) -> np.ndarray:
        """Flat array with right-hand limits at interior breakpoints."""
        pieces = self.split(pieces)
        parts = [p[:-1] for p in pieces[:-1]] + [pieces[-1]]
        return np.concatenate(parts)


def _simpson_running(y: np.ndarray, x: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(y):
        return (cumulative_simpson(y.real, x=x, initial=0.0)
                + 1j * cumulative_simpson(y.imag, x=x, initial=0.0))
    return cumulative_simpson(y, x=x, initial=0.0)


def cumulative_integral(grid: Grid, f: Sampled, x0: Optional[float] = None) -> np.ndarray:
    """
    Antiderivative F of a piecewise-smooth sampled f with F(x0) = 0.

    Composite Simpson on each smooth piece, never across a breakpoint; the
    result is continuous and returned as a flat array.
    """
    pieces = grid.split(f)
    out = []
    offset = 0.0
    for k, y in enumerate(pieces):
        running = _simpson_running(np.asarray(y), grid.piece_points(k)) + offset
        offset = running[-1]
        out.append(running)
    F = grid.flatten(out)
    if x0 is not None:
        F = F - F[grid.index_of(x0)]
    return F


def numeric_derivative(grid: Grid, f: Sampled) -> Union[np.ndarray, List[np.ndarray]]:
    """
    Second-order finite differences per piece (central inside, one-sided at
    piece edges). A flat input gives a flat output, a split input a split one.
    """
    flat_input = isinstance(f, np.ndarray) and f.ndim == 1
    pieces = grid.split(f)
    out = []
    for k, y in enumerate(pieces):
        if y.size < 3:
            raise GridError("Piece needs at least three points for differentiation",
                            x=float(grid.piece_points(k)[0]))
        out.append(np.gradient(np.asarray(y), grid.piece_points(k), edge_order=2))
    return grid.flatten(out) if flat_input else out
