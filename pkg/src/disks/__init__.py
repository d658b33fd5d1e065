from .branches import branch_evolve, evolve_branches, minimal_real_radius, real_center_evolve
from .centers import (NegativeWkbAlpha, PositiveWkbAlpha, check_wkb_negative, check_wkb_positive,
                      exponential_bound_alpha, wkb_negative_bracket, wkb_positive_brackets)
from .determinator import determinator, determinator_via_approx, piece_determinator
from .inputs import (ConstantAlpha, EstimateInputs, PieceInputs, build_inputs, compute_U,
                     initial_disk)
from .pipeline import (PieceRule, Policy, consistent_jump_disk, evolve_inputs, evolve_pipeline,
                       jump_disk)
from .residuals import ResidualReport, invariance_residuals
from .trajectory import EstimateTrajectory, Jump, Segment
from .tv_lens import (lens_evolve, lens_thickness, total_variation_evolve,
                      wkb_negative_total_variation)

__all__ = [
    "ConstantAlpha",
    "NegativeWkbAlpha",
    "PositiveWkbAlpha",
    "exponential_bound_alpha",
    "wkb_negative_bracket",
    "wkb_positive_brackets",
    "check_wkb_negative",
    "check_wkb_positive",
    "EstimateInputs",
    "PieceInputs",
    "EstimateTrajectory",
    "Segment",
    "Jump",
    "Policy",
    "PieceRule",
    "ResidualReport",
    "compute_U",
    "build_inputs",
    "initial_disk",
    "determinator",
    "determinator_via_approx",
    "piece_determinator",
    "real_center_evolve",
    "branch_evolve",
    "evolve_branches",
    "minimal_real_radius",
    "total_variation_evolve",
    "lens_evolve",
    "lens_thickness",
    "wkb_negative_total_variation",
    "evolve_inputs",
    "evolve_pipeline",
    "jump_disk",
    "consistent_jump_disk",
    "invariance_residuals",
]
