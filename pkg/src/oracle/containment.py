"""
Containment of reference solutions in a disk trajectory.

Seeds on the initial circle are integrated with the oracle; every grid point
of every segment is checked against its disk, so a breakpoint is checked
against both its pre-jump and post-jump disk.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from tqdm import tqdm

from ..core.disk import Disk
from ..core.errors import BlowUp
from ..disks.trajectory import EstimateTrajectory
from ..potential.potentials import Potential
from .integrate import DEFAULT_ORACLE_TOL, integrate_riccati, integrate_schrodinger

logger = logging.getLogger(__name__)

DEFAULT_SEEDS = 16
DEFAULT_CONTAINMENT_TOL = 1e-4
POLE_SWITCH = 1e4
SEED_INSET = 1e-12


@dataclass(frozen=True)
class SeedResult:
    seed: complex
    worst_margin: float
    worst_x: float
    first_failure_x: Optional[float]
    method: str

    @property
    def passed(self) -> bool:
        return self.first_failure_x is None

    def to_dict(self) -> Dict:
        d = asdict(self)
        d["seed"] = [self.seed.real, self.seed.imag]
        d["passed"] = self.passed
        return d


@dataclass(frozen=True)
class ContainmentReport:
    seeds: Tuple[SeedResult, ...]
    tol: float

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.seeds)

    @property
    def worst_margin(self) -> float:
        return float(min(s.worst_margin for s in self.seeds))

    @property
    def first_failure_x(self) -> Optional[float]:
        failures = [s.first_failure_x for s in self.seeds if s.first_failure_x is not None]
        return min(failures) if failures else None

    def to_dict(self) -> Dict:
        return {"seeds": len(self.seeds), "tol": self.tol, "worst_margin": self.worst_margin,
                "first_failure_x": self.first_failure_x, "pass": self.passed,
                "per_seed": [s.to_dict() for s in self.seeds]}


def boundary_seeds(disk: Disk, n: int = DEFAULT_SEEDS) -> List[complex]:
    """n points on the circle, pulled inside by a relative 1e-12."""
    if n < 1:
        raise ValueError(f"Need at least one seed, got {n}")
    r = disk.radius * (1.0 - SEED_INSET)
    return [complex(disk.center + r * np.exp(2j * np.pi * k / n)) for k in range(n)]


def reference_path(V: Potential, seed: complex, xs: np.ndarray, tol: float):
    """Oracle solution from seed on xs; the linear form takes over near poles."""
    try:
        sol = integrate_riccati(V, seed, xs, tol)
        if np.all(np.abs(sol.y) <= POLE_SWITCH):
            return sol.y, "riccati"
    except BlowUp as e:
        logger.debug(f"Seed {seed:.6g} meets a pole at x={e.x}; using the linear form")
    lin = integrate_schrodinger(V, 1.0, seed, xs, tol)
    return lin.y, "schrodinger"


def _seed_margins(traj: EstimateTrajectory, V: Potential, seed: complex, oracle_tol: float,
                  tol: float) -> SeedResult:
    y, method = reference_path(V, seed, traj.grid.points, oracle_tol)
    worst, worst_x, first_fail = np.inf, float(traj.grid.a), None
    for seg, (i0, i1) in zip(traj.segments, traj.grid.piece_slices):
        ys = y[i0:i1 + 1]
        margin = seg.R - np.abs(ys - (seg.alpha + 1j * seg.beta))
        margin = np.where(np.isfinite(margin), margin, -np.inf)
        k = int(np.argmin(margin))
        if margin[k] < worst:
            worst, worst_x = float(margin[k]), float(seg.x[k])
        bad = margin < -tol
        if np.any(bad) and first_fail is None:
            first_fail = float(seg.x[np.argmax(bad)])
    return SeedResult(seed=complex(seed), worst_margin=worst, worst_x=worst_x,
                      first_failure_x=first_fail, method=method)


def containment_report(traj: EstimateTrajectory, V: Potential,
                       seeds: Union[int, Sequence[complex]] = DEFAULT_SEEDS,
                       tol: float = DEFAULT_CONTAINMENT_TOL,
                       oracle_tol: float = DEFAULT_ORACLE_TOL,
                       workers: int = 1, progress: bool = False) -> ContainmentReport:
    """
    Worst margin R(x) - |y(x) - m(x)| per seed. A seed fails at the first x
    where the margin drops below -tol.
    """
    init = traj.initial_disk
    if isinstance(seeds, int):
        seeds = boundary_seeds(init, seeds)
    seeds = [complex(s) for s in seeds]
    outside = [s for s in seeds if abs(s - init.center) > init.radius * (1.0 + 1e-9) + 1e-12]
    if outside:
        raise ValueError(f"Seed {outside[0]} lies outside the initial disk")

    def run(seed):
        return _seed_margins(traj, V, seed, oracle_tol, tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(tqdm(pool.map(run, seeds), total=len(seeds), disable=not progress,
                                desc="oracle seeds"))
    else:
        results = [run(s) for s in tqdm(seeds, disable=not progress, desc="oracle seeds")]
    report = ContainmentReport(seeds=tuple(results), tol=tol)
    logger.info(f"Containment over {len(results)} seeds: worst margin {report.worst_margin:.3e}, "
                f"{'pass' if report.passed else 'FAIL at x=' + format(report.first_failure_x, '.6g')}")
    return report
