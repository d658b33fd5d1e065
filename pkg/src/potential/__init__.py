from .potentials import (LinearPotential, Potential, ScaledPotential, SinePotential,
                         TabulatedPotential, damp, linearize_at, make_constant_potential,
                         make_linear_potential, make_sine_potential, make_table_potential,
                         potential_from_dict, scale)

__all__ = [
    "Potential",
    "SinePotential",
    "LinearPotential",
    "TabulatedPotential",
    "ScaledPotential",
    "make_sine_potential",
    "make_linear_potential",
    "make_constant_potential",
    "make_table_potential",
    "linearize_at",
    "scale",
    "damp",
    "potential_from_dict",
]
