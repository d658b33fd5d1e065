"""
Fundamental solutions of phi'' = (a + b x) phi near a turning point.

Both solutions are entire; they are summed as power series in t = x - x0,
    c[n+2] = (a' c[n] + b c[n-1]) / ((n+1)(n+2)),   a' = a + b x0,
normalized so that (phi1, phi1')(x0) = (1, 0) and (phi2, phi2')(x0) = (0, 1).
"""
import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..core.errors import SeriesNotConverged
from ..potential.potentials import LinearPotential

logger = logging.getLogger(__name__)

SERIES_MAX_TERMS = 512
SERIES_TAIL_TOL = 1e-14
WRONSKIAN_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class AiryAnsatz:
    va: LinearPotential
    x0: float
    region: Tuple[float, float]
    coeffs: np.ndarray  # shape (2, n): series of phi1 and phi2 in powers of (x - x0)

    @property
    def n_terms(self) -> int:
        return self.coeffs.shape[1]

    def basis(self, x):
        """(phi1, phi1', phi2, phi2') at x."""
        t = np.asarray(x, dtype=float) - self.x0
        c1, c2 = self.coeffs
        values = (P.polyval(t, c1), P.polyval(t, P.polyder(c1)),
                  P.polyval(t, c2), P.polyval(t, P.polyder(c2)))
        if np.ndim(x):
            return values
        return tuple(complex(v) for v in values)

    def wronskian(self, x):
        p1, d1, p2, d2 = self.basis(x)
        return p1 * d2 - d1 * p2


def _series(a_shift: complex, b: complex, start: Tuple[complex, complex], n_max: int) -> np.ndarray:
    c = np.zeros(n_max + 1, dtype=complex)
    c[0], c[1] = start
    for n in range(0, n_max - 1):
        prev = c[n - 1] if n >= 1 else 0.0
        c[n + 2] = (a_shift * c[n] + b * prev) / ((n + 1) * (n + 2))
    return c


def _converged_length(c: np.ndarray, log_rho: float) -> int:
    """Number of leading terms after which three consecutive terms are negligible."""
    with np.errstate(divide="ignore"):
        log_terms = np.log(np.abs(c)) + np.arange(c.size) * log_rho
    running = np.maximum.accumulate(log_terms)
    threshold = np.log(SERIES_TAIL_TOL)
    for n in range(3, c.size):
        window = log_terms[n - 2:n + 1] - running[n]
        if np.all(window < threshold):
            return n + 1
    return -1


def airy_basis(va: LinearPotential, x0: float, region: Tuple[float, float]) -> AiryAnsatz:
    a, b = (float(v) for v in region)
    if not (np.isfinite(a) and np.isfinite(b)) or not b > a:
        raise ValueError(f"Airy region must be a bounded interval, got {region}")
    rho = max(abs(a - x0), abs(b - x0), 1e-12)
    a_shift = complex(va.eval(x0))
    slope = complex(va.b)
    log_rho = float(np.log(rho))
    lengths = []
    series = []
    for start in ((1.0, 0.0), (0.0, 1.0)):
        c = _series(a_shift, slope, start, SERIES_MAX_TERMS)
        n = _converged_length(c, log_rho)
        if n < 0:
            raise SeriesNotConverged(
                f"Airy series needs more than {SERIES_MAX_TERMS} terms on {region}; split the region")
        lengths.append(n)
        series.append(c)
    n = max(lengths)
    ansatz = AiryAnsatz(va=va, x0=float(x0), region=(a, b),
                        coeffs=np.vstack([series[0][:n], series[1][:n]]))
    drift = np.max(np.abs(ansatz.wronskian(np.linspace(a, b, 9)) - 1.0))
    if drift > WRONSKIAN_TOL:
        logger.warning(f"Airy basis Wronskian drifts by {drift:.3e} on {region}")
    logger.debug(f"Airy basis at x0={x0:.6g}: {n} terms")
    return ansatz
