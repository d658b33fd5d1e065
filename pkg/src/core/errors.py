"""
Exception hierarchy for the enclosure engine.

Every engine failure is a ValueError so callers that only know about bad
numerical input keep working. Errors raised at a location carry it in ``x``.
"""
from typing import Optional


class EngineError(ValueError):
    """Base class for all enclosure-engine failures."""

    def __init__(self, message: str, x: Optional[float] = None):
        self.x = x
        if x is not None:
            message = f"{message} (x={x:.12g})"
        super().__init__(message)


class GridError(EngineError):
    pass


class PoleEncountered(EngineError):
    """Scalar Riccati solution has blown up before x."""


class DegenerateToLine(EngineError):
    """Image of a circle under the flow is a straight line."""


class NotImaginary(EngineError):
    pass


class ZeroPotential(EngineError):
    pass


class SeriesNotConverged(EngineError):
    pass


class ZeroWavefunction(EngineError):
    pass


class ConditionViolated(EngineError):
    """Real-centred disk condition fails at a grid point."""


class ZeroCrossing(EngineError):
    """The integrated branch quantity (R-beta or R+beta) reached zero."""


class NegativeRadius(EngineError):
    pass


class ConsistencyViolated(EngineError):
    """Sign condition of the active branch fails beyond tolerance."""


class SignViolation(EngineError):
    pass


class PolicyExhausted(EngineError):
    """No estimate mechanism applies at a grid point."""


class JumpImpossible(EngineError):
    """No disk with the new W can contain the old disk at a breakpoint."""


class BlowUp(EngineError):
    pass


class HypothesisViolated(EngineError):
    pass


class ConstraintViolated(EngineError):
    pass


class CalibrationFailed(EngineError):
    pass


class RealPotentialRequired(EngineError):
    pass
