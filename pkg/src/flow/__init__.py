from .moebius import (ConstantFlow, FixedPoints, circle_track, classify_fixed_points,
                      exact_solution, propagate_circle, stable_tanh, stationary_circle_centers)

__all__ = [
    "ConstantFlow",
    "FixedPoints",
    "exact_solution",
    "propagate_circle",
    "classify_fixed_points",
    "stationary_circle_centers",
    "stable_tanh",
    "circle_track",
]
