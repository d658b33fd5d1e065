"""
Pointwise check of the sufficient condition for invariance,

    dR >= |d_alpha| + |d_beta|,
    dR = R' + 2 alpha R,
    d_alpha = -Re V + alpha^2 + alpha' + W,
    d_beta = beta' + 2 alpha beta - Im V,

on every segment of a trajectory.
"""
from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from .trajectory import EstimateTrajectory, Segment


@dataclass(frozen=True, eq=False)
class SegmentResiduals:
    x: np.ndarray
    dR: np.ndarray
    dalpha: np.ndarray
    dbeta: np.ndarray
    margin: np.ndarray

    @property
    def relative_margin(self) -> np.ndarray:
        return self.margin / (1.0 + np.abs(self.dR) + np.abs(self.dalpha) + np.abs(self.dbeta))


@dataclass(frozen=True, eq=False)
class ResidualReport:
    segments: Tuple[SegmentResiduals, ...]

    @property
    def min_margin(self) -> float:
        return float(min(s.margin.min() for s in self.segments))

    @property
    def min_relative_margin(self) -> float:
        return float(min(s.relative_margin.min() for s in self.segments))

    @property
    def worst_x(self) -> float:
        worst = min(self.segments, key=lambda s: s.margin.min())
        return float(worst.x[np.argmin(worst.margin)])


def _case_runs(case: np.ndarray) -> List[slice]:
    """Maximal runs of equal case labels."""
    edges = np.flatnonzero(case[1:] != case[:-1]) + 1
    bounds = np.concatenate(([0], edges, [case.size]))
    return [slice(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:])]


def _piecewise_gradient(seg: Segment, values: np.ndarray, analytic: np.ndarray) -> np.ndarray:
    # R and beta have kinks where the branch switches
    out = np.empty_like(values)
    for run in _case_runs(np.asarray(seg.case)):
        n = run.stop - run.start
        if n >= 3:
            out[run] = np.gradient(values[run], seg.x[run], edge_order=2)
        elif n == 2:
            out[run] = np.gradient(values[run], seg.x[run], edge_order=1)
        else:
            out[run] = analytic[run]
    return out


def segment_residuals(seg: Segment, derivative: str = "numeric") -> SegmentResiduals:
    """
    "numeric" differentiates the sampled R and beta separately on each run of
    one case; "analytic" uses the derivatives the evolution produced.
    """
    if derivative == "numeric":
        dR = _piecewise_gradient(seg, seg.R, seg.dR)
        dbeta = _piecewise_gradient(seg, seg.beta, seg.dbeta)
    elif derivative == "analytic":
        dR, dbeta = seg.dR, seg.dbeta
    else:
        raise ValueError(f"derivative must be 'numeric' or 'analytic', got {derivative!r}")
    delta_R = dR + 2.0 * seg.alpha * seg.R
    delta_alpha = -seg.re_v + seg.alpha ** 2 + seg.dalpha + seg.W
    delta_beta = dbeta + 2.0 * seg.alpha * seg.beta - seg.im_v
    margin = delta_R - np.abs(delta_alpha) - np.abs(delta_beta)
    return SegmentResiduals(x=seg.x, dR=delta_R, dalpha=delta_alpha, dbeta=delta_beta, margin=margin)


def invariance_residuals(trajectory: Union[EstimateTrajectory, Segment],
                     derivative: str = "numeric") -> ResidualReport:
    segments = (trajectory,) if isinstance(trajectory, Segment) else trajectory.segments
    return ResidualReport(tuple(segment_residuals(s, derivative) for s in segments))
