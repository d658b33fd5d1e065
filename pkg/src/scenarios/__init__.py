from .builders import (SCENARIOS, Scenario, build_plan, build_scenario, list_scenarios,
                       scenario_axis_crossing, scenario_exponential_bound,
                       scenario_negative_increasing, scenario_turning_point, scenario_wkb_negative,
                       scenario_wkb_positive)
from .checks import CHECKS, CheckOptions, CheckResult, run_checks
from .runner import (ScenarioRun, estimate_exponential_bound, estimate_negative_increasing,
                     estimate_wkb_negative, estimate_wkb_positive, paired_lens_profile,
                     paired_lens_radius, paired_overlap, run_scenario,
                     sweep_airy_offsets)
from .schema import (AnsatzPotential, InitialDoc, RegionDoc, ScenarioDoc, dump_scenario_doc,
                     load_scenario_doc)

__all__ = [
    "Scenario",
    "ScenarioDoc",
    "RegionDoc",
    "InitialDoc",
    "AnsatzPotential",
    "ScenarioRun",
    "CheckResult",
    "CheckOptions",
    "scenario_turning_point",
    "scenario_axis_crossing",
    "scenario_negative_increasing",
    "scenario_wkb_negative",
    "scenario_exponential_bound",
    "scenario_wkb_positive",
    "build_scenario",
    "build_plan",
    "list_scenarios",
    "run_scenario",
    "run_checks",
    "sweep_airy_offsets",
    "paired_lens_radius",
    "paired_lens_profile",
    "paired_overlap",
    "estimate_negative_increasing",
    "estimate_wkb_negative",
    "estimate_exponential_bound",
    "estimate_wkb_positive",
    "load_scenario_doc",
    "dump_scenario_doc",
]
