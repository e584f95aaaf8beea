# fairconf/models/result.py
from dataclasses import dataclass, field
from typing import Any, Dict

from fairconf.models.schedule import Schedule
from fairconf.schemas.objective import ObjectiveSpec


@dataclass(frozen=True)
class SolveResult:
    """Schedule produced by one solver together with its scalarized objective."""

    schedule: Schedule
    objective_value: float
    method: str
    objective: ObjectiveSpec
    diagnostics: Dict[str, Any] = field(default_factory=dict, hash=False, compare=False)
