"""
Named, machine-checkable assertions on a scenario run.

Checks are tagged "exact" (algebraic identities and the containment
property) or "qualitative" (shape claims: signs, monotonicity).
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np

from ..approximants.wkb import WkbAnsatz
from ..core.disk import disk_contains_disk
from ..disks.tv_lens import lens_thickness, wkb_negative_total_variation
from ..disks.residuals import invariance_residuals
from ..oracle.containment import (DEFAULT_CONTAINMENT_TOL, DEFAULT_SEEDS, containment_report,
                                  reference_path)
from ..oracle.integrate import DEFAULT_ORACLE_TOL
from ..potential.potentials import scale
from .runner import ScenarioRun

logger = logging.getLogger(__name__)

ALGEBRA_TOL = 1e-8
RESIDUAL_TOL = 1e-6
JUMP_TOL = 1e-9
IDENTITY_TOL = 1e-9
VTILDE_FRACTION = 0.1
CONVERGENCE_FRACTION = 0.01
SCALING_FACTORS = (1.0, 10.0, 100.0)
ROUNDING = 8 * np.finfo(float).eps

Kind = Literal["exact", "qualitative"]


@dataclass(frozen=True)
class CheckOptions:
    seeds: int = DEFAULT_SEEDS
    containment_tol: float = DEFAULT_CONTAINMENT_TOL
    oracle_tol: float = DEFAULT_ORACLE_TOL
    workers: int = 1


@dataclass(frozen=True)
class CheckResult:
    name: str
    kind: Kind
    passed: bool
    detail: str = ""

    def to_dict(self) -> Dict:
        return {"name": self.name, "kind": self.kind, "pass": self.passed, "detail": self.detail}


CheckFn = Callable[[ScenarioRun, CheckOptions], Tuple[bool, str]]
CHECKS: Dict[str, Tuple[Kind, CheckFn]] = {}


def check(name: str, kind: Kind):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = (kind, fn)
        return fn
    return register


@check("containment", "exact")
def _containment(run: ScenarioRun, opts: CheckOptions):
    worst, failures = np.inf, []
    for label, traj in run.trajectories.items():
        report = containment_report(traj, run.V, opts.seeds, opts.containment_tol, opts.oracle_tol,
                                    workers=opts.workers)
        worst = min(worst, report.worst_margin)
        if not report.passed:
            failures.append(f"{label} at x={report.first_failure_x:.6g}")
    detail = f"worst margin {worst:.3e}" + (f"; fails {', '.join(failures)}" if failures else "")
    return not failures, detail


@check("algebra", "exact")
def _algebra(run: ScenarioRun, opts: CheckOptions):
    worst = 0.0
    for traj in run.trajectories.values():
        for seg in traj.segments:
            active = np.isin(seg.case, ("A", "B"))
            if not np.any(active):
                continue
            excess = np.abs(seg.R ** 2 - seg.beta ** 2 - seg.W) - ROUNDING * seg.R ** 2
            gap = excess / (1.0 + np.abs(seg.W))
            worst = max(worst, float(np.max(gap[active])))
    return worst <= ALGEBRA_TOL, f"max relative |R^2 - beta^2 - W| = {worst:.3e}"


@check("residual_margin", "exact")
def _residual_margin(run: ScenarioRun, opts: CheckOptions):
    # R' and beta' from the evolution equations; finite differences of the
    # sampled disks carry an O((2 alpha h)^2) error far above the tolerance
    worst, where = np.inf, None
    for traj in run.trajectories.values():
        report = invariance_residuals(traj, derivative="analytic")
        if report.min_margin < worst:
            worst, where = report.min_margin, report.worst_x
    return worst >= -RESIDUAL_TOL, f"min margin {worst:.3e} at x={where:.6g}"


@check("jump_containment", "exact")
def _jump_containment(run: ScenarioRun, opts: CheckOptions):
    bad = [j.x for j in run.trajectory.jumps
           if not disk_contains_disk(j.after, j.before, JUMP_TOL * (1.0 + j.before.radius))]
    return not bad, f"{len(run.trajectory.jumps)} jumps" + (f"; violated at {bad}" if bad else "")


@check("upper_half_plane", "qualitative")
def _upper_half_plane(run: ScenarioRun, opts: CheckOptions):
    traj = run.trajectory
    lowest = traj.beta - traj.R
    ok = lowest >= -IDENTITY_TOL * (1.0 + traj.R)
    if np.all(ok):
        return True, f"min beta - R = {lowest.min():.6g}"
    return False, f"disk leaves the upper half plane at x={traj.x[np.argmin(ok)]:.6g}"


def _sign_changes(values: np.ndarray) -> np.ndarray:
    """Indices i where values changes sign between i - 1 and i."""
    s = np.sign(values)
    return np.flatnonzero(s[1:] * s[:-1] < 0) + 1


@check("crossing_cases", "qualitative")
def _crossing_cases(run: ScenarioRun, opts: CheckOptions):
    wrong = []
    for seg in run.trajectory.segments:
        for quantity, case in ((seg.beta - seg.R, "B"), (seg.beta + seg.R, "A")):
            for i in _sign_changes(quantity):
                if seg.case[i] != case or seg.case[i - 1] != case:
                    wrong.append(float(seg.x[i]))
    return not wrong, "crossings under the expected branch" if not wrong else f"unexpected at {wrong}"


@check("crosses_real_axis", "qualitative")
def _crosses_real_axis(run: ScenarioRun, opts: CheckOptions):
    beta = run.trajectory.beta
    crossings = _sign_changes(beta)
    return crossings.size > 0, f"center crosses the real axis {crossings.size} time(s)"


@check("vtilde_close", "qualitative")
def _vtilde_close(run: ScenarioRun, opts: CheckOptions):
    approx = run.inputs.approx
    if approx is None:
        return False, "no approximate solution"
    worst = 0.0
    for k, region in enumerate(run.scenario.plan):
        if not isinstance(region.ansatz, WkbAnsatz):
            continue
        p = run.inputs.pieces[k]
        v = p.re_v + 1j * p.im_v
        worst = max(worst, float(np.max(np.abs(approx.vtilde[k] - v)) / np.max(np.abs(v))))
    return worst <= VTILDE_FRACTION, f"max |V~ - V| / max |V| on WKB pieces = {worst:.3g}"


@check("radius_grows_last_region", "qualitative")
def _radius_grows(run: ScenarioRun, opts: CheckOptions):
    """R at the right end exceeds R at the middle of the last region."""
    last = run.trajectory.segments[-1]
    mid = last.R[last.x.size // 2]
    return bool(last.R[-1] > mid), f"R from {mid:.6g} (mid) to {last.R[-1]:.6g}"


def _edge_gaps(run: ScenarioRun, opts: CheckOptions, edge: str) -> np.ndarray:
    """Distance of the oracle's Im y from the lower or upper disk edge on the last region."""
    traj = run.trajectory
    seg = traj.segments[-1]
    i0, i1 = traj.grid.piece_slices[-1]
    y, _ = reference_path(run.V, traj.initial_disk.center, traj.grid.points, opts.oracle_tol)
    im_y = y[i0:i1 + 1].imag
    return im_y - (seg.beta - seg.R) if edge == "lower" else (seg.beta + seg.R) - im_y


def _converges(run: ScenarioRun, opts: CheckOptions, edge: str):
    gap = _edge_gaps(run, opts, edge)
    ok = gap[-1] >= -opts.containment_tol and abs(gap[-1]) <= CONVERGENCE_FRACTION * abs(gap[0])
    return bool(ok), f"{edge} edge gap from {gap[0]:.6g} to {gap[-1]:.3e}"


@check("lower_bound_converges", "qualitative")
def _lower_bound_converges(run: ScenarioRun, opts: CheckOptions):
    return _converges(run, opts, "lower")


@check("upper_bound_converges", "qualitative")
def _upper_bound_converges(run: ScenarioRun, opts: CheckOptions):
    return _converges(run, opts, "upper")


def _param(run: ScenarioRun, name: str) -> float:
    return float(run.scenario.doc.params[name])


@check("constant_top", "exact")
def _constant_top(run: ScenarioRun, opts: CheckOptions):
    c = _param(run, "c")
    err = float(np.max(np.abs(run.trajectory.beta + run.trajectory.R - c)))
    return err <= IDENTITY_TOL * (1.0 + c), f"max |beta + R - c| = {err:.3e}"


@check("bottom_formula", "exact")
def _bottom_formula(run: ScenarioRun, opts: CheckOptions):
    c = _param(run, "c")
    traj = run.trajectory
    v = run.inputs.flat("re_v")
    err = float(np.max(np.abs(traj.beta - traj.R - np.abs(v) / c)))
    return err <= IDENTITY_TOL * (1.0 + c), f"max |beta - R - |V|/c| = {err:.3e}"


@check("u_below_minus_c2", "exact")
def _u_below(run: ScenarioRun, opts: CheckOptions):
    c = _param(run, "c")
    top = float(np.max(run.inputs.flat("U")))
    return top < -c * c, f"max U = {top:.6g}, -c^2 = {-c * c:.6g}"


@check("tv_shrinks_with_scaling", "qualitative")
def _tv_shrinks(run: ScenarioRun, opts: CheckOptions):
    interval = run.scenario.doc.domain
    tvs = [wkb_negative_total_variation(scale(run.V, lam), interval) for lam in SCALING_FACTORS]
    ok = all(b < a for a, b in zip(tvs, tvs[1:]))
    return ok, "total variation " + ", ".join(f"{lam:g}: {tv:.6g}" for lam, tv in zip(SCALING_FACTORS, tvs))


@check("beta_sign_stable", "exact")
def _beta_sign_stable(run: ScenarioRun, opts: CheckOptions):
    traj = run.trajectory
    signs = np.unique(np.sign(traj.beta))
    clear = bool(np.all(np.abs(traj.beta) > traj.R))
    return signs.size == 1 and clear, f"sign(beta) in {signs.tolist()}, disk clear of the axis: {clear}"


@check("lens_real_axis", "exact")
def _lens_real_axis(run: ScenarioRun, opts: CheckOptions):
    U = run.inputs.flat("U")
    worst = 0.0
    for traj in run.trajectories.values():
        # distance of alpha ± sqrt(U) from the circle
        off = np.abs(np.hypot(np.sqrt(U), traj.beta) - traj.R) / (1.0 + traj.R)
        worst = max(worst, float(np.max(off)))
    return worst <= IDENTITY_TOL, f"boundaries meet the axis at alpha ± sqrt(U) within {worst:.3e}"


@check("lens_thins", "qualitative")
def _lens_thins(run: ScenarioRun, opts: CheckOptions):
    upper, lower = run.trajectories["upper"].segments[0], run.trajectories["lower"].segments[0]
    t = lens_thickness(upper, lower)
    return bool(t[-1] < t[0]), f"thickness from {t[0]:.6g} to {t[-1]:.6g}"


def run_checks(run: ScenarioRun, names: Optional[Sequence[str]] = None,
               options: Optional[CheckOptions] = None) -> List[CheckResult]:
    """Evaluate the named checks (default: the scenario's own list)."""
    options = options or CheckOptions()
    names = list(run.scenario.doc.checks if names is None else names)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise ValueError(f"Unknown checks {unknown}; registered: {sorted(CHECKS)}")
    results = []
    for name in names:
        kind, fn = CHECKS[name]
        passed, detail = fn(run, options)
        results.append(CheckResult(name=name, kind=kind, passed=bool(passed), detail=detail))
        logger.info(f"Check {name} [{kind}]: {'pass' if passed else 'FAIL'} ({detail})")
    return results
