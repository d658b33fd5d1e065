from .airy import AiryAnsatz, airy_basis
from .glue import GluedApprox, Region, RegionPlan, glue
from .wkb import (WkbAnsatz, dvtilde_wkb, vtilde_wkb, wkb_condition, wkb_condition_profile,
                  wkb_y)

__all__ = [
    "WkbAnsatz",
    "AiryAnsatz",
    "GluedApprox",
    "Region",
    "RegionPlan",
    "wkb_y",
    "airy_basis",
    "glue",
    "vtilde_wkb",
    "dvtilde_wkb",
    "wkb_condition",
    "wkb_condition_profile",
]
