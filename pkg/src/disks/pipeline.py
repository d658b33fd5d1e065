"""
Full-interval enclosure: branch families per smooth piece, real-centred
tails where a region asks for them, and containment-preserving jumps at
region boundaries.
"""
import logging
from typing import List, Literal, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..approximants.glue import RegionPlan, glue
from ..core.disk import Disk, disk_contains_disk
from ..core.errors import JumpImpossible, PolicyExhausted
from ..core.grid import DEFAULT_GRID_POINTS
from ..potential.potentials import Potential
from .branches import (CONSISTENCY_TOL, SWITCH_ETA, SWITCH_FLOOR, evolve_branches,
                       integrated_quantity, real_center_evolve)
from .inputs import EstimateInputs, PieceInputs, build_inputs, check_initial_disk
from .trajectory import EstimateTrajectory, Jump

logger = logging.getLogger(__name__)

JUMP_TOL = 1e-9


class Policy(BaseModel):
    """Pipeline knobs; serialized as {"default_W": "U", "switch_eta": 1e-3, "jump_rule": "grow_R"}."""

    model_config = ConfigDict(extra="forbid")

    default_W: Literal["U"] = "U"
    switch_eta: float = Field(SWITCH_ETA, gt=0)
    jump_rule: Literal["grow_R", "minimal"] = "grow_R"
    consistency_tol: float = Field(CONSISTENCY_TOL, gt=0)


class PieceRule(NamedTuple):
    prefer: Optional[str] = None
    mechanism: str = "auto"


def jump_disk(before: Disk, W_new: float, rule: str = "grow_R") -> Disk:
    """
    Smallest disk on the same vertical line with R^2 - beta^2 = W_new that
    contains before. "grow_R" keeps beta whenever that is possible.
    """
    if rule not in ("grow_R", "minimal"):
        raise ValueError(f"Unknown jump rule {rule!r}")
    beta, R = before.beta, before.radius
    top, depth = beta + R, R - beta
    keep_beta = None
    if W_new + beta * beta >= R * R:
        keep_beta = (beta, float(np.sqrt(W_new + beta * beta)))
        if rule == "grow_R":
            return Disk(complex(before.alpha, keep_beta[0]), keep_beta[1])
    candidates: List[Tuple[float, float]] = [] if keep_beta is None else [keep_beta]
    if top != 0.0:
        new_depth = W_new / top
        if new_depth >= depth and top + new_depth >= 0.0:
            candidates.append((0.5 * (top - new_depth), 0.5 * (top + new_depth)))
    if depth != 0.0:
        new_top = W_new / depth
        if new_top >= top and new_top + depth >= 0.0:
            candidates.append((0.5 * (new_top - depth), 0.5 * (new_top + depth)))
    if not candidates:
        raise JumpImpossible(
            f"No disk with R^2 - beta^2 = {W_new:.6g} contains the disk beta={beta:.6g}, R={R:.6g}")
    beta_new, R_new = min(candidates, key=lambda c: c[1])
    return Disk(complex(before.alpha, beta_new), R_new)


def consistent_jump_disk(before: Disk, p: PieceInputs) -> Disk:
    """
    Smallest disk with R^2 - beta^2 = W > 0 at the start of piece p that
    contains before and has D >= 0, so that both branches apply (W = U).

    The top beta + R and the bottom beta - R both increase with beta, so
    containment is an interval of beta; D = 2 alpha W + W'/2 + beta Im V
    cuts it to a sub-interval, and the point nearest beta = 0 is taken.
    """
    W = float(p.W[0])
    if not W > 0.0:
        raise JumpImpossible(f"Consistent jumps need W > 0, got {W:.6g}", x=float(p.x[0]))
    top, bottom = before.beta + before.radius, before.beta - before.radius
    lo = (top * top - W) / (2.0 * top) if top > 0.0 else -np.inf
    hi = (bottom * bottom - W) / (2.0 * bottom) if bottom < 0.0 else np.inf
    c0 = 2.0 * p.alpha[0] * W + 0.5 * p.dW[0]
    im_v = float(p.im_v[0])
    if im_v < 0.0:
        hi = min(hi, -c0 / im_v)
    elif im_v > 0.0:
        lo = max(lo, -c0 / im_v)
    elif c0 < 0.0:
        lo = np.inf
    if lo > hi:
        raise JumpImpossible(
            f"No disk with R^2 - beta^2 = {W:.6g} and D >= 0 contains the disk "
            f"beta={before.beta:.6g}, R={before.radius:.6g}", x=float(p.x[0]))
    beta = float(np.clip(0.0, lo, hi))
    return Disk(complex(before.alpha, beta), float(np.sqrt(W + beta * beta)))


def _initial_branch(p: PieceInputs, disk: Disk, prefer: Optional[str], hint: Optional[str]) -> str:
    beta, R = disk.beta, disk.radius
    D = 2.0 * p.alpha[0] * p.W[0] + 0.5 * p.dW[0] - R * abs(p.W[0] - p.U[0]) + beta * p.im_v[0]
    floor = SWITCH_FLOOR * np.sqrt(1.0 + abs(p.U[0]))
    order = [b for b in (prefer, hint) if b is not None] + ["A", "B"]
    feasible = [b for b in order
                if abs(integrated_quantity(b, beta, R)) > floor
                and integrated_quantity(b, beta, R) * D >= -CONSISTENCY_TOL * (1.0 + abs(D))]
    if not feasible:
        raise PolicyExhausted(f"No branch applies to the disk beta={beta:.6g}, R={R:.6g} (D={D:.6g})",
                              x=float(p.x[0]))
    if prefer in feasible or hint in feasible:
        return feasible[0]
    return max(feasible, key=lambda b: abs(integrated_quantity(b, beta, R)))


def evolve_inputs(inputs: EstimateInputs, rules: Optional[Sequence[PieceRule]], policy: Policy,
                  init: Disk) -> EstimateTrajectory:
    """Run the pipeline on prepared inputs; one rule per smooth piece."""
    rules = list(rules) if rules is not None else [PieceRule()] * inputs.grid.n_pieces
    if len(rules) != inputs.grid.n_pieces:
        raise ValueError(f"Need one rule per piece ({inputs.grid.n_pieces}), got {len(rules)}")
    if rules[0].mechanism != "real":
        check_initial_disk(inputs, init)

    segments, jumps, constants = [], [], {}
    disk, hint = init, None
    for k, rule in enumerate(rules):
        p = inputs.pieces[k]
        if rule.mechanism == "real":
            seg = real_center_evolve(inputs, p.interval, R0=abs(disk.beta) + disk.radius)
            inputs = inputs.with_W(k, seg.W, seg.dW)
            hint = None
        else:
            before = Disk(complex(p.alpha[0], disk.beta), disk.radius)
            start = init if k == 0 else jump_disk(before, float(p.W[0]), policy.jump_rule)
            try:
                branch = _initial_branch(p, start, rule.prefer, hint)
            except PolicyExhausted:
                if k == 0 or not p.W[0] > 0.0:
                    raise
                start = consistent_jump_disk(before, p)
                logger.info(f"Jump at x={p.x[0]:.6g} widened to beta={start.beta:.6g}, "
                            f"R={start.radius:.6g} so that D >= 0")
                branch = _initial_branch(p, start, rule.prefer, hint)
            seg = evolve_branches(p, k, branch, start, switching=True, prefer=rule.prefer,
                                  switch_eta=policy.switch_eta,
                                  consistency_tol=policy.consistency_tol)
            hint = str(seg.case[-1])
        if k > 0:
            jump = Jump(x=float(p.x[0]), piece=k, before=disk, after=seg.first)
            if not disk_contains_disk(jump.after, jump.before, JUMP_TOL * (1.0 + disk.radius)):
                raise JumpImpossible("Post-jump disk does not contain the pre-jump disk", x=jump.x)
            jumps.append(jump)
        for name, value in seg.constants.items():
            constants[f"piece{k}.{name}"] = value
        logger.info(f"Piece {k} [{p.interval[0]:.6g}, {p.interval[1]:.6g}]: cases {'/'.join(seg.cases)}, "
                    f"final R={seg.R[-1]:.6g}")
        segments.append(seg)
        disk = seg.last

    return EstimateTrajectory(grid=inputs.grid, segments=tuple(segments), jumps=tuple(jumps),
                              constants=constants, inputs=inputs)


def evolve_pipeline(V: Potential, plan: RegionPlan, policy: Optional[Policy], init: Disk,
                    grid_size: int = DEFAULT_GRID_POINTS,
                    seed: Optional[Tuple[complex, complex]] = None) -> EstimateTrajectory:
    policy = policy or Policy()
    grid = plan.grid(grid_size)
    approx = glue(plan, grid, seed)
    inputs = build_inputs(V, grid, approx)
    rules = [PieceRule(r.prefer, r.mechanism) for r in plan]
    logger.info(f"Pipeline on [{plan.domain[0]:.6g}, {plan.domain[1]:.6g}] with {len(plan)} regions, "
                f"{grid.points.size} grid points")
    return evolve_inputs(inputs, rules, policy, init)
