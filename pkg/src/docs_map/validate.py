"""
Formula-to-code map: every relation the engine implements points at the
public operation that implements it.

The map is a checked-in JSON document:

    {"entries": [{"id", "relation", "formula", "operation", "status"}],
     "plumbing": ["package:name", ...]}

``operation`` is "package:name" with package relative to ``src``. Every
public function exported by the scanned packages must appear exactly once,
either as an implemented entry or in the plumbing list.
"""
import importlib
import inspect
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, model_validator

logger = logging.getLogger(__name__)

ROOT_PACKAGE = __name__.split(".")[0]
DEFAULT_MAP_PATH = Path(__file__).resolve().parents[2] / "docs" / "formula_map.json"
SCANNED_PACKAGES = ("core", "potential", "flow", "approximants", "disks", "oracle", "scenarios")


class MapEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    relation: str
    formula: str = ""
    operation: Optional[str] = None
    status: Literal["implemented", "out-of-scope"] = "implemented"

    @model_validator(mode="after")
    def _operation_when_implemented(self):
        if self.status == "implemented" and not self.operation:
            raise ValueError(f"Entry {self.id!r} is implemented but names no operation")
        return self


class FormulaMap(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: List[MapEntry]
    plumbing: List[str] = []


@dataclass
class MapReport:
    dangling: List[str] = field(default_factory=list)      # entry ids
    duplicates: List[str] = field(default_factory=list)    # entry ids or operations
    unmapped: List[str] = field(default_factory=list)      # operations

    @property
    def passed(self) -> bool:
        return not (self.dangling or self.duplicates or self.unmapped)

    def to_dict(self) -> Dict:
        return {"pass": self.passed, "dangling": self.dangling, "duplicates": self.duplicates,
                "unmapped": self.unmapped}


def load_map(source: Union[str, Path, Dict, None] = None) -> FormulaMap:
    if isinstance(source, dict):
        return FormulaMap.model_validate(source)
    with open(source or DEFAULT_MAP_PATH) as f:
        return FormulaMap.model_validate(json.load(f))


def _resolve(operation: str) -> bool:
    package, _, name = operation.partition(":")
    if not name:
        return False
    try:
        module = importlib.import_module(f"{ROOT_PACKAGE}.{package}")
    except ImportError:
        return False
    return callable(getattr(module, name, None))


def public_operations(packages: Sequence[str] = SCANNED_PACKAGES) -> List[str]:
    """Functions named in each package's __all__, as "package:name"."""
    ops = []
    for package in packages:
        module = importlib.import_module(f"{ROOT_PACKAGE}.{package}")
        for name in getattr(module, "__all__", ()):
            if inspect.isfunction(getattr(module, name, None)):
                ops.append(f"{package}:{name}")
    return ops


def validate_map(source: Union[str, Path, Dict, FormulaMap, None] = None,
                 packages: Sequence[str] = SCANNED_PACKAGES) -> MapReport:
    fmap = source if isinstance(source, FormulaMap) else load_map(source)
    report = MapReport()

    ids = Counter(e.id for e in fmap.entries)
    report.duplicates.extend(sorted(i for i, n in ids.items() if n > 1))

    implemented = [e for e in fmap.entries if e.status == "implemented"]
    for entry in implemented:
        if not _resolve(entry.operation):
            report.dangling.append(entry.id)
    for op in fmap.plumbing:
        if not _resolve(op):
            report.dangling.append(op)

    mapped = Counter([e.operation for e in implemented] + list(fmap.plumbing))
    report.duplicates.extend(sorted(op for op, n in mapped.items() if n > 1))
    report.unmapped.extend(op for op in public_operations(packages) if op not in mapped)

    if report.passed:
        logger.info(f"Formula map: {len(implemented)} implemented entries, "
                    f"{len(fmap.plumbing)} plumbing operations, all resolved")
    else:
        logger.warning(f"Formula map problems: {report.to_dict()}")
    return report
