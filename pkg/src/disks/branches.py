"""
Complex-centred disk families (branches A and B) and real-centred disks.

With disks centred at alpha + i beta, R^2 - beta^2 = W and
sigma = exp(∫ 2 alpha), one of the two factors of R^2 - beta^2 solves a
linear equation:

    branch A:  q = R - beta,  q' = -2 alpha q - Im V + |W - U|
    branch B:  q = R + beta,  q' = -2 alpha q + Im V + |W - U|

and the other factor is W / q. Branch A is invariant while (R - beta) D >= 0,
branch B while (R + beta) D >= 0, D being the determinator.

The linear equation is solved in closed form, shifted by max(log sigma) on
the piece so that sigma itself is never formed.
"""
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from ..core.disk import Disk
from ..core.errors import (ConditionViolated, ConsistencyViolated, NegativeRadius, PolicyExhausted,
                           ZeroCrossing)
from ..core.grid import Grid, cumulative_integral
from .inputs import EstimateInputs, PieceInputs
from .trajectory import Segment

logger = logging.getLogger(__name__)

BRANCHES = ("A", "B")
CONSISTENCY_TOL = 1e-9
RADIUS_TOL = 1e-9
SWITCH_ETA = 1e-3
SWITCH_FLOOR = 1e-12
REAL_RADIUS_SLACK = 1e-6
REAL_RADIUS_BLOWUP = 1e8

State = Union[Disk, Tuple[float, float]]


def _other(branch: str) -> str:
    return "B" if branch == "A" else "A"


def integrated_quantity(branch: str, beta: float, R: float) -> float:
    """R - beta for branch A, R + beta for branch B."""
    return R - beta if branch == "A" else R + beta


def _state(init: State) -> Tuple[float, float]:
    if isinstance(init, Disk):
        return init.beta, init.radius
    beta, R = init
    return float(beta), float(R)


class _BranchIntegrator:
    """Closed-form solution of both branch equations on one piece."""

    def __init__(self, p: PieceInputs):
        self.p = p
        self.shift = float(np.max(p.log_sigma))
        weight = np.exp(p.log_sigma - self.shift)
        base = np.abs(p.W - p.U)
        self.forcing = {"A": base - p.im_v, "B": base + p.im_v}
        grid = Grid(p.x)
        self.J = {b: cumulative_integral(grid, weight * g) for b, g in self.forcing.items()}

    def run(self, branch: str, j: int, q_j: float) -> np.ndarray:
        """q on indices j..end given q(x_j) = q_j."""
        L = self.p.log_sigma
        J = self.J[branch]
        return (np.exp(L[j] - L[j:]) * q_j
                + np.exp(self.shift - L[j:]) * (J[j:] - J[j]))


def _consistency_scale(p: PieceInputs, i: int, beta: float, R: float, q: float) -> float:
    terms = (abs(2.0 * p.alpha[i] * p.W[i]) + abs(0.5 * p.dW[i])
             + abs(R * (p.W[i] - p.U[i])) + abs(beta * p.im_v[i]))
    return CONSISTENCY_TOL * (1.0 + abs(q) * terms)


class _PieceRecorder:
    def __init__(self, n: int):
        self.beta = np.empty(n)
        self.R = np.empty(n)
        self.D = np.empty(n)
        self.dR = np.empty(n)
        self.dbeta = np.empty(n)
        self.case = np.empty(n, dtype="<U4")

    def segment(self, p: PieceInputs, piece: int, constants) -> Segment:
        return Segment(piece=piece, x=p.x, alpha=p.alpha, beta=self.beta, R=self.R, D=self.D,
                       dR=self.dR, dbeta=self.dbeta, case=self.case, W=p.W, dW=p.dW, U=p.U,
                       dalpha=p.dalpha, re_v=p.re_v, im_v=p.im_v, constants=constants)


def evolve_branches(p: PieceInputs, piece: int, branch: str, init: State, *,
                    switching: bool = False, prefer: Optional[str] = None,
                    switch_eta: float = SWITCH_ETA,
                    consistency_tol: float = CONSISTENCY_TOL) -> Segment:
    """
    Run the branch families across one piece.

    Without switching the given branch must stay consistent on the whole
    piece. With switching the active branch changes at a grid point when
    its sign condition fails, when the region prefers the other branch,
    when the integrated factor falls below eta = switch_eta * sqrt(1 + |U|),
    or, without a preference, when both factors are positive and the other
    one is the larger. The last rule moves the integration to the far edge
    of the disk once its center has crossed the real axis. Switching keeps
    the disk unchanged.
    """
    if branch not in BRANCHES or prefer not in (None, *BRANCHES):
        raise ValueError(f"Branch must be one of {BRANCHES}, got {branch!r} (prefer={prefer!r})")
    scale_tol = consistency_tol / CONSISTENCY_TOL
    beta0, R0 = _state(init)
    integrator = _BranchIntegrator(p)
    rec = _PieceRecorder(p.size)

    def feasible(q: float, i: int, beta: float, R: float, D: float) -> bool:
        floor = SWITCH_FLOOR * np.sqrt(1.0 + abs(p.U[i]))
        return abs(q) > floor and q * D >= -scale_tol * _consistency_scale(p, i, beta, R, q)

    b = branch
    q_start = integrated_quantity(b, beta0, R0)
    if switching and abs(q_start) <= SWITCH_FLOOR * np.sqrt(1.0 + abs(p.U[0])):
        b = _other(b)
        q_start = integrated_quantity(b, beta0, R0)
    if q_start == 0.0:
        raise ZeroCrossing(f"Initial disk has zero {'R-beta' if b == 'A' else 'R+beta'}", x=p.x[0])
    constants = {"c": float(np.exp(p.log_sigma[0]) * q_start), "branch0": b}
    run = integrator.run(b, 0, q_start)
    start, last_switch, switches = 0, -1, 0
    i = 0
    while i < p.size:
        q = run[i - start]
        if not np.isfinite(q) or q == 0.0 or np.sign(q) != np.sign(run[0]):
            name = "R-beta" if b == "A" else "R+beta"
            raise ZeroCrossing(f"{name} vanished under branch {b}", x=float(p.x[i]))
        other_q = p.W[i] / q
        R = 0.5 * (q + other_q)
        beta = 0.5 * (other_q - q) if b == "A" else 0.5 * (q - other_q)
        D = (2.0 * p.alpha[i] * p.W[i] + 0.5 * p.dW[i] - R * abs(p.W[i] - p.U[i])
             + beta * p.im_v[i])

        if switching and last_switch != i:
            eta = switch_eta * np.sqrt(1.0 + abs(p.U[i]))
            other = _other(b)
            target = None
            if not feasible(q, i, beta, R, D):
                if feasible(other_q, i, beta, R, D):
                    target = other
                else:
                    raise PolicyExhausted(
                        f"Neither branch is consistent (R-beta={R - beta:.6g}, R+beta={R + beta:.6g}, "
                        f"D={D:.6g}, U={p.U[i]:.6g})", x=float(p.x[i]))
            elif prefer == other and other_q > eta and feasible(other_q, i, beta, R, D):
                target = other
            elif (prefer is None and q > 0.0 and other_q > q
                  and feasible(other_q, i, beta, R, D)):
                target = other
            elif abs(q) < eta and abs(other_q) > abs(q) and feasible(other_q, i, beta, R, D):
                target = other
            if target is not None:
                logger.debug(f"Branch {b} -> {target} at x={p.x[i]:.6g}")
                b, start, last_switch = target, i, i
                switches += 1
                run = integrator.run(b, i, other_q)
                continue
        elif not switching and q * D < -scale_tol * _consistency_scale(p, i, beta, R, q):
            cond = "(R-beta)*D" if b == "A" else "(R+beta)*D"
            raise ConsistencyViolated(f"{cond} = {q * D:.6g} < 0 under branch {b}", x=float(p.x[i]))

        if R < -RADIUS_TOL * (1.0 + abs(beta)):
            raise NegativeRadius(f"Radius {R:.6g} under branch {b}", x=float(p.x[i]))

        dq = -2.0 * p.alpha[i] * q + integrator.forcing[b][i]
        dother = (p.dW[i] - other_q * dq) / q
        rec.beta[i], rec.R[i], rec.D[i] = beta, max(R, 0.0), D
        rec.dR[i] = 0.5 * (dq + dother)
        rec.dbeta[i] = 0.5 * (dother - dq) if b == "A" else 0.5 * (dq - dother)
        rec.case[i] = b
        i += 1

    constants["switches"] = switches
    return rec.segment(p, piece, constants)


def branch_evolve(inputs: EstimateInputs, interval: Sequence[float], branch: str,
                  init: State) -> Segment:
    """One branch on one smooth piece, no switching; init = Disk or (beta0, R0)."""
    k = inputs.piece_for(interval)
    p = inputs.pieces[k]
    beta0, R0 = _state(init)
    gap = R0 * R0 - beta0 * beta0 - p.W[0]
    if abs(gap) > 1e-8 * (1.0 + abs(p.W[0])):
        raise ValueError(f"Initial disk violates R^2 - beta^2 = W(x0): off by {gap:.3e}")
    return evolve_branches(p, k, branch, (beta0, R0), switching=False)


def minimal_real_radius(inputs: EstimateInputs, interval: Sequence[float], R0: float,
                        slack: float = REAL_RADIUS_SLACK) -> Tuple[np.ndarray, np.ndarray]:
    """
    Smallest radius of real-centred invariant disks starting from R0:
    R' = |R^2 - U| + |Im V| - 2 alpha R (+ slack * (1 + R)).
    Returns (R, R') on the piece's grid points.
    """
    if not R0 > 0.0:
        raise ValueError(f"R0 must be positive, got {R0}")
    p = inputs.pieces[inputs.piece_for(interval)]
    U, imv, alpha = (CubicSpline(p.x, f) for f in (p.U, np.abs(p.im_v), p.alpha))

    def rhs(x, r):
        return [abs(r[0] * r[0] - U(x)) + imv(x) - 2.0 * alpha(x) * r[0] + slack * (1.0 + abs(r[0]))]

    def blow_up(x, r):
        return REAL_RADIUS_BLOWUP - abs(r[0])

    blow_up.terminal = True
    sol = solve_ivp(rhs, (p.x[0], p.x[-1]), [R0], method="DOP853", t_eval=p.x,
                    rtol=1e-11, atol=1e-12, events=blow_up)
    if sol.status != 0 or sol.y.shape[1] != p.size:
        where = float(sol.t[-1]) if sol.t.size else float(p.x[0])
        raise ConditionViolated(f"Real-centred radius cannot be continued: {sol.message}", x=where)
    R = sol.y[0]
    dR = np.abs(R * R - p.U) + np.abs(p.im_v) - 2.0 * p.alpha * R + slack * (1.0 + np.abs(R))
    return R, dR


def real_center_evolve(inputs: EstimateInputs, interval: Sequence[float],
                       R0: Optional[float] = None) -> Segment:
    """
    Real-centred disks m = alpha, R = sqrt(W). With R0 the smallest
    admissible W = R^2 is constructed first; otherwise the inputs' W is used
    and must satisfy 2 alpha W + W'/2 - sqrt(W)(|W - U| + |Im V|) >= 0.
    """
    k = inputs.piece_for(interval)
    p = inputs.pieces[k]
    if R0 is not None:
        R, dR = minimal_real_radius(inputs, interval, R0)
        W, dW = R * R, 2.0 * R * dR
    else:
        W, dW = p.W, p.dW
        bad = W <= 0.0
        if np.any(bad):
            raise ConditionViolated("Real-centred disks need W > 0", x=float(p.x[np.argmax(bad)]))
        R = np.sqrt(W)
        dR = dW / (2.0 * R)
    spread = np.abs(W - p.U) + np.abs(p.im_v)
    lhs = 2.0 * p.alpha * W + 0.5 * dW - R * spread
    scale = CONSISTENCY_TOL * (1.0 + np.abs(2.0 * p.alpha * W) + np.abs(0.5 * dW) + R * spread)
    bad = lhs < -scale
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ConditionViolated(f"Real-centred condition fails: {lhs[i]:.6g} < 0", x=float(p.x[i]))
    zeros = np.zeros_like(R)
    D = 2.0 * p.alpha * W + 0.5 * dW - R * np.abs(W - p.U)
    return Segment(piece=k, x=p.x, alpha=p.alpha, beta=zeros, R=R, D=D, dR=dR, dbeta=zeros,
                   case=np.full(p.size, "REAL", dtype="<U4"), W=W, dW=dW, U=p.U,
                   dalpha=p.dalpha, re_v=p.re_v, im_v=p.im_v, constants={"R0": float(R[0])})
