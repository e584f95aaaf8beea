# fairconf/schemas/plan.py
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from fairconf.schemas.objective import ObjectiveSpec


class PriorityPlan(BaseModel):
    """
    Talk groups (by id, group 1 first) and the order in which they are scheduled.

    A group referenced more than once schedules its talks again in the
    remaining slots. `objectives`, when given, has one entry per round;
    otherwise every round uses `objective` (by default the balanced
    mFairConf weights, solved by RRFS).
    """

    model_config = ConfigDict(extra="forbid")

    groups: List[List[str]] = Field(..., min_length=1)
    sequence: List[int] = Field(..., min_length=1)
    objective: ObjectiveSpec = Field(default_factory=ObjectiveSpec.balanced)
    objectives: Optional[List[ObjectiveSpec]] = None
    method: str = "rrfs"

    @model_validator(mode="after")
    def check_references(self) -> "PriorityPlan":
        for group in self.sequence:
            if not 1 <= group <= len(self.groups):
                raise ValueError(f"Round references unknown group {group}")
        if self.objectives is not None and len(self.objectives) != len(self.sequence):
            raise ValueError("objectives must have one entry per round")
        return self

    def round_objective(self, round_index: int) -> ObjectiveSpec:
        if self.objectives is not None:
            return self.objectives[round_index]
        return self.objective
