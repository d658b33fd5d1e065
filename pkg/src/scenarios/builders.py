"""
Worked scenarios: the estimate set-ups the engine ships with.

Every builder returns a Scenario around a validated ScenarioDoc, so each
one can also be written to and read back from JSON.
"""
import inspect
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..approximants.airy import airy_basis
from ..approximants.glue import Region, RegionPlan
from ..approximants.wkb import WkbAnsatz
from ..core.errors import ConstraintViolated
from ..disks.centers import check_wkb_negative, check_wkb_positive
from ..potential.potentials import (LinearPotential, Potential, SinePotential, damp,
                                    linearize_at, scale)
from .schema import (AnsatzPotential, InitialDoc, RegionDoc, ScenarioDoc, load_scenario_doc)

TURNING_POINT_VARIANTS = ("baseline", "flipped", "real_tail")
TURNING_POINT_PREFACTOR = 10000.0
TURNING_POINT_ABSORPTION = 0.05
TURNING_POINT_R0 = 2.5
TURNING_POINT_FLIPPED_DAMP = 0.999

AXIS_CROSSING_PREFACTOR = 500.0
AXIS_CROSSING_ABSORPTION = -0.2
AXIS_CROSSING_AIRY_OFFSET = -0.0775   # on Re b, in units of |b|
AXIS_CROSSING_MODIFIED_OFFSET = -0.08
AXIS_CROSSING_OFFSET_LIMIT = 0.3
AXIS_CROSSING_WKB_SCALE = 0.95
AXIS_CROSSING_R0 = 0.0

HYPOTHESIS_POINTS = 2049

HALF_PI = math.pi / 2
QUARTER_PI = math.pi / 4


@dataclass(frozen=True, eq=False)
class Scenario:
    doc: ScenarioDoc
    V: Potential
    plan: Optional[RegionPlan] = None

    @property
    def name(self) -> str:
        return self.doc.name if self.doc.variant is None else f"{self.doc.name}/{self.doc.variant}"

    @classmethod
    def from_doc(cls, doc: ScenarioDoc) -> "Scenario":
        V = doc.build_potential()
        plan = build_plan(doc, V) if doc.estimate == "pipeline" else None
        return cls(doc=doc, V=V, plan=plan)


def _ansatz_potential(V: Potential, spec: AnsatzPotential) -> Potential:
    return damp(V, spec.factor) if spec.kind == "damp" else scale(V, spec.factor)


def build_plan(doc: ScenarioDoc, V: Potential) -> RegionPlan:
    regions = []
    for r in doc.regions:
        if r.kind == "wkb":
            ansatz = WkbAnsatz(_ansatz_potential(V, r.vwkb), r.sign, r.interval)
        else:
            va = linearize_at(V, r.taylor_at)
            offset = r.b_re_offset + r.b_offset_rel * abs(va.b)
            if offset:
                va = va.shifted_slope(r.taylor_at, offset)
            ansatz = airy_basis(va, r.taylor_at, r.interval)
        regions.append(Region(tuple(r.interval), ansatz, r.prefer, r.mechanism))
    return RegionPlan(tuple(regions))


def scenario_turning_point(variant: str = "baseline") -> Scenario:
    """
    V = 10^4 (-1/2 + (1 + 0.05i) sin^2 x) on [0, pi/2], turning point at pi/4.
    WKB on [0, 0.715], Airy on [0.715, 0.83], WKB on [0.83, pi/2]. The
    baseline's lower edge converges to the solution in the last region.
    "flipped" damps the WKB potential there so that D < 0 and branch B
    applies, whose upper edge converges instead; the two disks together
    pin Im y down to a thin lens. "real_tail" switches to real-centred
    disks in the last region.
    """
    if variant not in TURNING_POINT_VARIANTS:
        raise ValueError(f"Unknown turning_point variant {variant!r}; "
                         f"choose from {TURNING_POINT_VARIANTS}")
    V = SinePotential(TURNING_POINT_PREFACTOR, TURNING_POINT_ABSORPTION)
    tail = RegionDoc(interval=(0.83, HALF_PI), kind="wkb")
    checks = ["containment", "algebra", "jump_containment", "residual_margin"]
    if variant == "baseline":
        checks += ["upper_half_plane", "lower_bound_converges"]
    elif variant == "flipped":
        tail = RegionDoc(interval=(0.83, HALF_PI), kind="wkb", prefer="B",
                         vwkb=AnsatzPotential(kind="damp", factor=TURNING_POINT_FLIPPED_DAMP))
        checks += ["upper_half_plane", "upper_bound_converges", "radius_grows_last_region"]
    else:
        # beta = 0: the disk straddles the real axis
        tail = RegionDoc(interval=(0.83, HALF_PI), kind="wkb", mechanism="real")
    doc = ScenarioDoc(
        name="turning_point", variant=variant,
        description="Complex potential with one turning point; WKB/Airy/WKB plan",
        potential=V.to_dict(), estimate="pipeline",
        regions=[RegionDoc(interval=(0.0, 0.715), kind="wkb"),
                 RegionDoc(interval=(0.715, 0.83), kind="airy", taylor_at=QUARTER_PI),
                 tail],
        initial=InitialDoc(R0=TURNING_POINT_R0), checks=checks)
    return Scenario.from_doc(doc)


def scenario_axis_crossing(airy_b_offset: float = AXIS_CROSSING_AIRY_OFFSET,
                           wkb_c_modification: float = AXIS_CROSSING_WKB_SCALE) -> Scenario:
    """
    V = 500 (-1/2 + (1 - 0.2i) sin^2 x), whose solutions cross the real axis.
    airy_b_offset shifts Re b of the Airy potential by airy_b_offset * |b|;
    wkb_c_modification scales the WKB potential of the last region.

    The defaults come from a calibration sweep: only a narrow window of
    offsets lets branch B carry beta - R below zero and hands over to
    branch A before the Airy region ends. The last region starts with
    U > 0, where both branches need D >= 0; the damped WKB potential leaves
    room for a containing disk with D >= 0 there. The initial disk is the
    point alpha + i sqrt(-U) at x = 0.
    """
    if abs(airy_b_offset) > AXIS_CROSSING_OFFSET_LIMIT:
        raise ValueError(f"Airy offset must lie within ±{AXIS_CROSSING_OFFSET_LIMIT}|b|, "
                         f"got {airy_b_offset}")
    if not wkb_c_modification > 0:
        raise ValueError(f"WKB modification must be positive, got {wkb_c_modification}")
    V = SinePotential(AXIS_CROSSING_PREFACTOR, AXIS_CROSSING_ABSORPTION)
    calibrated = (airy_b_offset, wkb_c_modification) == (AXIS_CROSSING_AIRY_OFFSET,
                                                         AXIS_CROSSING_WKB_SCALE)
    variant = "default" if calibrated else "modified"
    doc = ScenarioDoc(
        name="axis_crossing", variant=variant,
        description="Solutions forced across the real axis; branches switch near the crossing",
        potential=V.to_dict(), estimate="pipeline",
        regions=[RegionDoc(interval=(0.0, 0.52), kind="wkb"),
                 RegionDoc(interval=(0.52, 0.83), kind="airy", taylor_at=QUARTER_PI,
                           b_offset_rel=airy_b_offset),
                 RegionDoc(interval=(0.83, HALF_PI), kind="wkb",
                           vwkb=AnsatzPotential(kind="scale", factor=wkb_c_modification))],
        initial=InitialDoc(R0=AXIS_CROSSING_R0),
        checks=["containment", "algebra", "jump_containment", "residual_margin", "crossing_cases",
                "crosses_real_axis", "vtilde_close"])
    return Scenario.from_doc(doc)


def scenario_negative_increasing(V: Optional[Potential] = None, c: float = 1.5,
                                 interval: Tuple[float, float] = (0.0, 1.0)) -> Scenario:
    """alpha = 0 and branch B: beta + R = c, beta - R = |V|/c for V <= 0 increasing."""
    V = V if V is not None else LinearPotential(-2.0, 1.0)
    v0 = abs(complex(V.eval(interval[0])))
    if not c > 0 or c * c < v0:
        raise ConstraintViolated(f"Need c^2 >= |V(x0)| = {v0:.6g}, got c={c}", x=float(interval[0]))
    doc = ScenarioDoc(
        name="negative_increasing", description="Increasing family of disks for V <= 0, V' >= 0",
        potential=V.to_dict(), estimate="negative_increasing", interval=interval,
        params={"c": float(c)},
        checks=["containment", "algebra", "residual_margin", "constant_top", "bottom_formula"])
    return Scenario.from_doc(doc)


def scenario_wkb_negative(V: Optional[Potential] = None, T0: float = 1.5,
                          interval: Tuple[float, float] = (0.0, 0.6)) -> Scenario:
    """Total-variation disks around the WKB wave, alpha = -V'/(4V), V < 0."""
    V = V if V is not None else SinePotential(TURNING_POINT_PREFACTOR)
    check_wkb_negative(V, np.linspace(interval[0], interval[1], HYPOTHESIS_POINTS))
    doc = ScenarioDoc(
        name="wkb_negative", description="WKB error disks in a classically allowed region",
        potential=V.to_dict(), estimate="wkb_negative", interval=interval,
        params={"T0": float(T0)},
        checks=["containment", "residual_margin", "beta_sign_stable", "tv_shrinks_with_scaling"])
    return Scenario.from_doc(doc)


def scenario_exponential_bound(V: Optional[Potential] = None, c: float = 5.0,
                               interval: Tuple[float, float] = (0.6, 0.9),
                               T0: float = 1.5) -> Scenario:
    """Constant alpha = c + sup sqrt(max(0, V)), so that U < -c^2 everywhere."""
    V = V if V is not None else SinePotential(TURNING_POINT_PREFACTOR)
    doc = ScenarioDoc(
        name="exponential_bound", description="Constant center line above every turning point",
        potential=V.to_dict(), estimate="exponential_bound", interval=interval,
        params={"c": float(c), "T0": float(T0)},
        checks=["containment", "residual_margin", "u_below_minus_c2"])
    return Scenario.from_doc(doc)


def scenario_wkb_positive(V: Optional[Potential] = None,
                          interval: Tuple[float, float] = (0.3, 1.2)) -> Scenario:
    """Lens around the WKB wave of V/4 for V > 0."""
    V = V if V is not None else SinePotential(500.0, 0.0, 0.6)
    check_wkb_positive(V, np.linspace(interval[0], interval[1], HYPOTHESIS_POINTS))
    doc = ScenarioDoc(
        name="wkb_positive", description="Lens-shaped WKB error region in a forbidden region",
        potential=V.to_dict(), estimate="wkb_positive", interval=interval,
        checks=["containment", "residual_margin", "lens_real_axis", "lens_thins"])
    return Scenario.from_doc(doc)


SCENARIOS: Dict[str, Callable[..., Scenario]] = {
    "turning_point": scenario_turning_point,
    "axis_crossing": scenario_axis_crossing,
    "negative_increasing": scenario_negative_increasing,
    "wkb_negative": scenario_wkb_negative,
    "exponential_bound": scenario_exponential_bound,
    "wkb_positive": scenario_wkb_positive,
}


def list_scenarios() -> List[str]:
    return sorted(SCENARIOS)


def build_scenario(name: str, variant: Optional[str] = None, **params) -> Scenario:
    """Scenario by registered name, or from a JSON file when name is a path."""
    if name not in SCENARIOS:
        path = Path(name)
        if path.suffix == ".json" and path.exists():
            return Scenario.from_doc(load_scenario_doc(path))
        raise ValueError(f"Unknown scenario {name!r}; choose from {list_scenarios()} "
                         "or give a JSON file")
    if name == "turning_point":
        if params:
            raise ValueError(f"Scenario {name!r} takes no parameters {sorted(params)}")
        return scenario_turning_point(variant or "baseline")
    if variant not in (None, "default"):
        if name == "axis_crossing" and variant == "modified":
            params.setdefault("airy_b_offset", AXIS_CROSSING_MODIFIED_OFFSET)
        else:
            raise ValueError(f"Scenario {name!r} has no variant {variant!r}")
    builder = SCENARIOS[name]
    unknown = set(params) - set(inspect.signature(builder).parameters)
    if unknown:
        raise ValueError(f"Scenario {name!r} takes no parameters {sorted(unknown)}")
    return builder(**params)
