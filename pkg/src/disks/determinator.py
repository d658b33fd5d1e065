"""
The determinator

    D = 2 alpha W + W'/2 - R |W - U| + beta Im V,

whose sign decides which disk family can be invariant at a point, and the
same quantity written through an approximate solution (alpha = Re y~, W = U):

    D = 2 alpha Re(V - V~) + Re(V - V~)'/2 - Im y~ Im V~ + beta Im V.
"""
import numpy as np

from ..approximants.glue import GluedApprox
from ..potential.potentials import Potential
from .inputs import EstimateInputs, PieceInputs


def piece_determinator(p: PieceInputs, beta, R) -> np.ndarray:
    return 2.0 * p.alpha * p.W + 0.5 * p.dW - R * np.abs(p.W - p.U) + beta * p.im_v


def determinator(inputs: EstimateInputs, beta: float, R: float, x: float) -> float:
    k, i = inputs.locate(x)
    p = inputs.pieces[k]
    return float(2.0 * p.alpha[i] * p.W[i] + 0.5 * p.dW[i] - R * abs(p.W[i] - p.U[i])
                 + beta * p.im_v[i])


def determinator_via_approx(approx: GluedApprox, V: Potential, beta: float, x: float) -> float:
    k = approx.grid.piece_index(x)
    i = approx.grid.index_of(x) - approx.grid.piece_slices[k][0]
    y = approx.ytilde[k][i]
    vt, dvt = approx.vtilde[k][i], approx.dvtilde[k][i]
    v, dv = complex(V.eval(x)), complex(V.d1(x))
    return float(2.0 * y.real * (v - vt).real + 0.5 * (dv - dvt).real
                 - y.imag * vt.imag + beta * v.imag)
