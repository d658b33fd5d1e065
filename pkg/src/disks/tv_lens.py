"""
Invariant disks with explicit parameterizations for real potentials.

U < 0: with s = sqrt(|U|) and a free T >= 1,
    beta = (s/2)(T + 1/T),  R = (s/2)(T - 1/T),
is invariant when T grows at least like exp(TV(log|sigma^2 U|) / 2).

U > 0: the disks with top Uσ/c1, bottom -c1/σ and with top c2/σ, bottom
-Uσ/c2 are both invariant when U' + 4 alpha U >= 0; the solution stays in
the lens they cut out, which thins like 1/sigma.
"""
import logging
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..core.errors import RealPotentialRequired, SignViolation
from ..potential.potentials import Potential
from .inputs import EstimateInputs, PieceInputs
from .trajectory import Segment

logger = logging.getLogger(__name__)

REAL_POTENTIAL_TOL = 1e-12
SIGN_TOL = 1e-9
WKB_TV_POINTS = 4097


def _require_real(p: PieceInputs):
    bad = np.abs(p.im_v) > REAL_POTENTIAL_TOL * (1.0 + np.abs(p.re_v))
    if np.any(bad):
        raise RealPotentialRequired("Estimate needs a real potential", x=float(p.x[np.argmax(bad)]))


def total_variation_increments(f: np.ndarray, df: np.ndarray, x: np.ndarray) -> np.ndarray:
    """
    Running total variation of a sampled function. Each interval counts
    max(|Δf|, ∫|f'|) with f' linear on the interval and split at its zero.
    """
    h = np.diff(x)
    a, b = df[:-1], df[1:]
    same = a * b >= 0.0
    denom = np.where(same, 1.0, np.abs(a) + np.abs(b))
    through = np.where(same, np.abs(a + b) * 0.5, (a * a + b * b) / (2.0 * denom)) * h
    steps = np.maximum(np.abs(np.diff(f)), through)
    return np.concatenate(([0.0], np.cumsum(steps)))


def total_variation_evolve(inputs: EstimateInputs, interval: Sequence[float], T0: float = 1.0,
                           half_plane: int = 1) -> Segment:
    """Disks inside one half plane where U < 0; half_plane picks the sign of beta."""
    if not T0 >= 1.0:
        raise ValueError(f"T0 must be >= 1, got {T0}")
    k = inputs.piece_for(interval)
    p = inputs.pieces[k]
    _require_real(p)
    bad = p.U >= 0.0
    if np.any(bad):
        raise SignViolation(f"U must be negative, found {p.U[np.argmax(bad)]:.6g}",
                            x=float(p.x[np.argmax(bad)]))
    f = 2.0 * p.log_sigma + np.log(np.abs(p.U))
    df = 4.0 * p.alpha + p.dU / p.U
    tv = total_variation_increments(f, df, p.x)
    log_T = np.log(T0) + 0.5 * tv
    T, inv_T = np.exp(log_T), np.exp(-log_T)
    dlog_T = 0.5 * np.abs(df)
    s = np.sqrt(-p.U)
    ds = -p.dU / (2.0 * s)
    sign = 1.0 if half_plane >= 0 else -1.0
    beta = sign * 0.5 * s * (T + inv_T)
    R = 0.5 * s * (T - inv_T)
    dbeta = sign * (0.5 * ds * (T + inv_T) + 0.5 * s * dlog_T * (T - inv_T))
    dR = 0.5 * ds * (T - inv_T) + 0.5 * s * dlog_T * (T + inv_T)
    D = 2.0 * p.alpha * p.U + 0.5 * p.dU
    logger.debug(f"Total variation on {p.interval}: {tv[-1]:.6g}")
    return Segment(piece=k, x=p.x, alpha=p.alpha, beta=beta, R=R, D=D, dR=dR, dbeta=dbeta,
                   case=np.full(p.size, "TV", dtype="<U4"), W=p.U, dW=p.dU, U=p.U,
                   dalpha=p.dalpha, re_v=p.re_v, im_v=p.im_v,
                   constants={"T0": float(T0), "total_variation": float(tv[-1])})


def lens_evolve(inputs: EstimateInputs, interval: Sequence[float], c1: Optional[float] = None,
                c2: Optional[float] = None) -> Tuple[Segment, Segment]:
    """
    The two disk families bounding the lens where U > 0. Both constants
    default to sigma(x0) sqrt(U(x0)), which makes the lens symmetric at x0.
    """
    k = inputs.piece_for(interval)
    p = inputs.pieces[k]
    _require_real(p)
    bad = p.U <= 0.0
    if np.any(bad):
        raise SignViolation(f"U must be positive, found {p.U[np.argmax(bad)]:.6g}",
                            x=float(p.x[np.argmax(bad)]))
    growth = p.dU + 4.0 * p.alpha * p.U
    bad = growth < -SIGN_TOL * (1.0 + np.abs(p.dU) + np.abs(4.0 * p.alpha * p.U))
    if np.any(bad):
        raise SignViolation(f"U' + 4 alpha U = {growth[np.argmax(bad)]:.6g} < 0",
                            x=float(p.x[np.argmax(bad)]))
    default = float(np.exp(p.log_sigma[0]) * np.sqrt(p.U[0]))
    c1 = default if c1 is None else float(c1)
    c2 = default if c2 is None else float(c2)
    if not (c1 > 0.0 and c2 > 0.0):
        raise ValueError(f"Lens constants must be positive, got c1={c1}, c2={c2}")

    D = 2.0 * p.alpha * p.U + 0.5 * p.dU
    out = []
    for tag, c, sign in (("c1", c1, 1.0), ("c2", c2, -1.0)):
        far = p.U * np.exp(p.log_sigma - np.log(c))       # U sigma / c
        near = np.exp(np.log(c) - p.log_sigma)             # c / sigma
        dfar = (p.dU + 2.0 * p.alpha * p.U) * np.exp(p.log_sigma - np.log(c))
        dnear = -2.0 * p.alpha * near
        out.append(Segment(piece=k, x=p.x, alpha=p.alpha, beta=sign * 0.5 * (far - near),
                           R=0.5 * (far + near), D=D, dR=0.5 * (dfar + dnear),
                           dbeta=sign * 0.5 * (dfar - dnear),
                           case=np.full(p.size, "LENS", dtype="<U4"), W=p.U, dW=p.dU, U=p.U,
                           dalpha=p.dalpha, re_v=p.re_v, im_v=p.im_v, constants={tag: c}))
    return out[0], out[1]


def lens_thickness(upper: Segment, lower: Segment) -> np.ndarray:
    """Vertical extent of the lens at every grid point."""
    top = np.minimum(upper.beta + upper.R, lower.beta + lower.R)
    bottom = np.maximum(upper.beta - upper.R, lower.beta - lower.R)
    return top - bottom


def wkb_negative_total_variation(V: Potential, interval: Sequence[float],
                                 n: int = WKB_TV_POINTS,
                                 cumulative: bool = False) -> Union[float, np.ndarray]:
    """
    TV of log|1 + V''/(4V^2) + 5V'^2/(16|V|^3)| over interval, evaluated
    directly from V < 0 real. Equals the total variation of log|sigma^2 U|
    for alpha = -V'/(4V).
    """
    xs = np.linspace(float(interval[0]), float(interval[1]), n)
    v, v1, v2, v3 = (np.asarray(d, dtype=complex) for d in V.derivatives(xs))
    if np.any(np.abs(v.imag) > REAL_POTENTIAL_TOL * (1.0 + np.abs(v.real))):
        raise RealPotentialRequired("WKB total variation needs a real potential")
    v, v1, v2, v3 = v.real, v1.real, v2.real, v3.real
    if np.any(v >= 0.0):
        raise SignViolation("Potential must be negative", x=float(xs[np.argmax(v >= 0.0)]))
    m = -v
    bracket = 1.0 + v2 / (4.0 * v * v) + 5.0 * v1 * v1 / (16.0 * m ** 3)
    dbracket = (v3 / (4.0 * v * v) - v2 * v1 / (2.0 * v ** 3)
                + (5.0 / 16.0) * (2.0 * v1 * v2 / m ** 3 + 3.0 * v1 ** 3 / m ** 4))
    g = np.log(np.abs(bracket))
    tv = total_variation_increments(g, dbracket / bracket, xs)
    return tv if cumulative else float(tv[-1])
