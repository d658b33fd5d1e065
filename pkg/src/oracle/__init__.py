from .containment import (ContainmentReport, SeedResult, boundary_seeds,
                          containment_report)
from .integrate import (OracleSolution, SchrodingerSolution, amplitude_from_wronskian,
                        integrate_riccati, integrate_schrodinger, wronskian_amplitude)

__all__ = [
    "OracleSolution",
    "SchrodingerSolution",
    "ContainmentReport",
    "SeedResult",
    "integrate_riccati",
    "integrate_schrodinger",
    "containment_report",
    "boundary_seeds",
    "wronskian_amplitude",
    "amplitude_from_wronskian",
]
