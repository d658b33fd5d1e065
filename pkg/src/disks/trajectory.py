"""
Disk trajectories: per-piece segments, breakpoint jumps and table export.
"""
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..core.disk import Disk
from ..core.grid import Grid

CASE_TAGS = ("A", "B", "REAL", "TV", "LENS")
JUMP_EPS = 1e-15


@dataclass(frozen=True, eq=False)
class Segment:
    """One smooth piece of a trajectory, endpoints included."""

    piece: int
    x: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    R: np.ndarray
    D: np.ndarray
    dR: np.ndarray
    dbeta: np.ndarray
    case: np.ndarray
    W: np.ndarray
    dW: np.ndarray
    U: np.ndarray
    dalpha: np.ndarray
    re_v: np.ndarray
    im_v: np.ndarray
    constants: Dict[str, float] = field(default_factory=dict)

    def disk(self, i: int) -> Disk:
        return Disk(complex(self.alpha[i], self.beta[i]), max(float(self.R[i]), 0.0))

    @property
    def first(self) -> Disk:
        return self.disk(0)

    @property
    def last(self) -> Disk:
        return self.disk(-1)

    @property
    def cases(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(self.case.tolist()))


@dataclass(frozen=True)
class Jump:
    x: float
    piece: int           # index of the piece that starts at x
    before: Disk
    after: Disk

    @property
    def moved(self) -> bool:
        return (abs(self.after.center - self.before.center) > JUMP_EPS
                or abs(self.after.radius - self.before.radius) > JUMP_EPS)


@dataclass(frozen=True, eq=False)
class EstimateTrajectory:
    grid: Grid
    segments: Tuple[Segment, ...]
    jumps: Tuple[Jump, ...] = ()
    constants: Dict[str, float] = field(default_factory=dict)
    inputs: Optional[object] = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.segments) != self.grid.n_pieces:
            raise ValueError(f"Trajectory needs {self.grid.n_pieces} segments, got {len(self.segments)}")

    def flat(self, name: str) -> np.ndarray:
        """Field sampled on the whole grid, post-jump values at breakpoints."""
        return self.grid.flatten([getattr(s, name) for s in self.segments])

    @property
    def x(self) -> np.ndarray:
        return self.grid.points

    @property
    def R(self) -> np.ndarray:
        return self.flat("R")

    @property
    def beta(self) -> np.ndarray:
        return self.flat("beta")

    @property
    def alpha(self) -> np.ndarray:
        return self.flat("alpha")

    @property
    def centers(self) -> np.ndarray:
        return self.alpha + 1j * self.beta

    @property
    def jump_flags(self) -> np.ndarray:
        flags = np.zeros(self.grid.points.size, dtype=bool)
        for jump in self.jumps:
            if jump.moved:
                flags[self.grid.index_of(jump.x)] = True
        return flags

    def disk_at(self, index: int) -> Disk:
        """Disk at a flat grid index; post-jump disk at breakpoints."""
        return Disk(complex(self.alpha[index], self.beta[index]), max(float(self.R[index]), 0.0))

    @property
    def initial_disk(self) -> Disk:
        return self.segments[0].first

    @property
    def final_disk(self) -> Disk:
        return self.segments[-1].last

    @property
    def cases(self) -> Tuple[str, ...]:
        seen: Dict[str, None] = {}
        for s in self.segments:
            seen.update(dict.fromkeys(s.cases))
        return tuple(seen)

    def with_radius_scaled(self, factor: float) -> "EstimateTrajectory":
        """Same centers, radii multiplied by factor (used as a negative control)."""
        segments = tuple(replace(s, R=s.R * factor, dR=s.dR * factor) for s in self.segments)
        jumps = tuple(Jump(j.x, j.piece, Disk(j.before.center, j.before.radius * factor),
                           Disk(j.after.center, j.after.radius * factor)) for j in self.jumps)
        return replace(self, segments=segments, jumps=jumps)

    def rows(self) -> List[Dict]:
        """
        Table rows x, alpha, beta, R, D, case, jump. A breakpoint where the
        disk jumps appears twice: pre-jump (jump=0) then post-jump (jump=1).
        """
        moved = {j.piece for j in self.jumps if j.moved}
        out: List[Dict] = []
        for k, s in enumerate(self.segments):
            stop = s.x.size if k == len(self.segments) - 1 else s.x.size - 1
            start = 0
            if k > 0 and k in moved:
                out.append(_row(s, 0, jump=1))
                start = 1
            for i in range(start, stop):
                out.append(_row(s, i, jump=0))
            if k < len(self.segments) - 1 and (k + 1) in moved:
                out.append(_row(s, s.x.size - 1, jump=0))
        return out


def _row(s: Segment, i: int, jump: int) -> Dict:
    return {"x": float(s.x[i]), "alpha": float(s.alpha[i]), "beta": float(s.beta[i]),
            "R": float(s.R[i]), "D": float(s.D[i]), "case": str(s.case[i]), "jump": jump}
