# fairconf/schemas/instance.py
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from fairconf.exceptions.instance_exceptions import DimensionMismatchError
from fairconf.models.instance import SchedulingInstance, Slot


class ParticipantSchema(BaseModel):
    """Schema for a participant entry."""

    id: str


class TalkSchema(BaseModel):
    """Schema for a talk entry with its optional priority level."""

    id: str
    priority: Optional[int] = Field(None, ge=1)


class SlotSchema(BaseModel):
    """Schema for a slot entry."""

    id: str
    start_utc_min: int
    duration_min: int = Field(..., gt=0)


class InstanceSchema(BaseModel):
    """
    Canonical JSON document of a scheduling instance.

    Matrix row counts and widths are checked on conversion; probability ranges
    and slot ordering are left to InstanceService.validate_instance.
    """

    model_config = ConfigDict(extra="forbid")

    participants: List[ParticipantSchema]
    talks: List[TalkSchema]
    slots: List[SlotSchema]
    interest: List[List[float]]
    availability: List[List[float]]
    weights: Optional[List[float]] = None

    def to_instance(self) -> SchedulingInstance:
        m = len(self.participants)
        return SchedulingInstance(
            participant_ids=tuple(p.id for p in self.participants),
            talk_ids=tuple(t.id for t in self.talks),
            slots=tuple(Slot(s.id, s.start_utc_min, s.duration_min) for s in self.slots),
            interest=_as_matrix(self.interest, m, len(self.talks)),
            availability=_as_matrix(self.availability, m, len(self.slots)),
            weights=None if self.weights is None else np.array(self.weights, dtype=float),
            talk_priorities=tuple(t.priority for t in self.talks)
        )

    @classmethod
    def from_instance(cls, instance: SchedulingInstance) -> "InstanceSchema":
        return cls(
            participants=[ParticipantSchema(id=p) for p in instance.participant_ids],
            talks=[
                TalkSchema(id=t, priority=priority)
                for t, priority in zip(instance.talk_ids, instance.talk_priorities)
            ],
            slots=[
                SlotSchema(id=s.id, start_utc_min=s.start_utc_min, duration_min=s.duration_min)
                for s in instance.slots
            ],
            interest=instance.interest.tolist(),
            availability=instance.availability.tolist(),
            weights=instance.weights.tolist() if instance.is_weighted else None
        )


def _as_matrix(rows: List[List[float]], m: int, width: int) -> np.ndarray:
    if len(rows) != m:
        raise DimensionMismatchError(f"Expected {m} matrix rows, got {len(rows)}")
    if m == 0:
        return np.zeros((0, width))
    lengths = {len(row) for row in rows}
    if lengths != {width}:
        raise DimensionMismatchError(
            f"Expected rows of length {width}, got {sorted(lengths)}"
        )
    return np.array(rows, dtype=float)
