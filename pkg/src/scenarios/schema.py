"""
JSON documents describing scenarios, validated with pydantic.

A scenario names a potential, how alpha is chosen (a region plan, or one of
the closed-form choices), the estimate policy and the initial disk.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..disks.pipeline import Policy
from ..potential.potentials import Potential, potential_from_dict


class AnsatzPotential(BaseModel):
    """V_WKB as a multiple of V: "damp" for factors in (0, 1], "scale" for any positive factor."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["damp", "scale"] = "damp"
    factor: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _damp_range(self):
        if self.kind == "damp" and self.factor > 1.0:
            raise ValueError(f"damp factor must lie in (0, 1], got {self.factor}")
        return self


class RegionDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    interval: Tuple[float, float]
    kind: Literal["wkb", "airy"]
    sign: Literal["+", "-"] = "+"
    vwkb: AnsatzPotential = AnsatzPotential()
    taylor_at: Optional[float] = None
    b_re_offset: float = 0.0
    b_offset_rel: float = 0.0           # offset on Re b in units of |b|
    prefer: Optional[Literal["A", "B"]] = None
    mechanism: Literal["auto", "real"] = "auto"

    @model_validator(mode="after")
    def _airy_point(self):
        if self.kind == "airy" and self.taylor_at is None:
            raise ValueError(f"Airy region {self.interval} needs taylor_at")
        if not self.interval[1] > self.interval[0]:
            raise ValueError(f"Empty region {self.interval}")
        return self


class InitialDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    R0: float = Field(ge=0)
    half_plane: Literal[1, -1] = 1


class ScenarioDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    variant: Optional[str] = None
    description: str = ""
    potential: Dict[str, Any]
    estimate: Literal["pipeline", "negative_increasing", "wkb_negative", "exponential_bound",
                      "wkb_positive"]
    interval: Optional[Tuple[float, float]] = None
    regions: List[RegionDoc] = []
    policy: Policy = Policy()
    initial: Optional[InitialDoc] = None
    params: Dict[str, float] = {}
    checks: List[str] = []

    @field_validator("potential")
    @classmethod
    def _known_potential(cls, value: Dict[str, Any]) -> Dict[str, Any]:
        potential_from_dict(value)
        return value

    @model_validator(mode="after")
    def _shape(self):
        if self.estimate == "pipeline":
            if not self.regions:
                raise ValueError("A pipeline scenario needs regions")
            if self.initial is None:
                raise ValueError("A pipeline scenario needs an initial disk")
            for left, right in zip(self.regions, self.regions[1:]):
                if left.interval[1] != right.interval[0]:
                    raise ValueError(f"Regions {left.interval} and {right.interval} do not share an endpoint")
        elif self.interval is None:
            raise ValueError(f"Scenario estimate {self.estimate!r} needs an interval")
        return self

    @property
    def domain(self) -> Tuple[float, float]:
        if self.estimate == "pipeline":
            return (self.regions[0].interval[0], self.regions[-1].interval[1])
        return self.interval

    def build_potential(self) -> Potential:
        return potential_from_dict(self.potential)


def load_scenario_doc(source: Union[str, Path, Dict]) -> ScenarioDoc:
    if isinstance(source, dict):
        return ScenarioDoc.model_validate(source)
    with open(source) as f:
        return ScenarioDoc.model_validate(json.load(f))


def dump_scenario_doc(doc: ScenarioDoc, path: Union[str, Path]) -> None:
    with open(path, "w") as f:
        f.write(doc.model_dump_json(indent=2))
        f.write("\n")
