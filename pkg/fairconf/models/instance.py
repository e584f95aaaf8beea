# fairconf/models/instance.py
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Tuple

import numpy as np


def _frozen(values, dtype=np.float64) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class Slot:
    """A time slot; start is minutes after 00:00 UTC of day 0."""

    id: str
    start_utc_min: int
    duration_min: int

    @property
    def end_utc_min(self) -> int:
        return self.start_utc_min + self.duration_min


@dataclass(frozen=True, eq=False)
class SchedulingInstance:
    """
    Participants, talks and slots together with the interest matrix V (m x n)
    and the availability matrix A (m x l).

    Arrays are copied and made read-only on construction. Validation lives in
    InstanceService.validate_instance; constructing an instance does not check
    the probability ranges or slot ordering.
    """

    participant_ids: Tuple[str, ...]
    talk_ids: Tuple[str, ...]
    slots: Tuple[Slot, ...]
    interest: np.ndarray
    availability: np.ndarray
    weights: Optional[np.ndarray] = None
    talk_priorities: Tuple[Optional[int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "participant_ids", tuple(self.participant_ids))
        object.__setattr__(self, "talk_ids", tuple(self.talk_ids))
        object.__setattr__(self, "slots", tuple(self.slots))
        object.__setattr__(self, "interest", _frozen(self.interest))
        object.__setattr__(self, "availability", _frozen(self.availability))

        weights = self.weights
        if weights is None:
            weights = np.ones(len(self.participant_ids))
        object.__setattr__(self, "weights", _frozen(weights))

        priorities = tuple(self.talk_priorities) or (None,) * len(self.talk_ids)
        object.__setattr__(self, "talk_priorities", priorities)

    @property
    def m(self) -> int:
        return len(self.participant_ids)

    @property
    def n(self) -> int:
        return len(self.talk_ids)

    @property
    def l(self) -> int:
        return len(self.slots)

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    @property
    def is_weighted(self) -> bool:
        return not np.all(self.weights == 1.0)

    @cached_property
    def crowd_matrix(self) -> np.ndarray:
        """E[t, s] = sum_p w_p V_p(t) A_p(s), the expected crowd of talk t in slot s."""
        matrix = (self.interest * self.weights[:, None]).T @ self.availability
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def slot_starts(self) -> np.ndarray:
        return _frozen([slot.start_utc_min for slot in self.slots], dtype=np.int64)

    def talk_index(self, talk_id: str) -> int:
        return self._talk_lookup[talk_id]

    def slot_index(self, slot_id: str) -> int:
        return self._slot_lookup[slot_id]

    @cached_property
    def _talk_lookup(self) -> dict:
        return {talk_id: index for index, talk_id in enumerate(self.talk_ids)}

    @cached_property
    def _slot_lookup(self) -> dict:
        return {slot.id: index for index, slot in enumerate(self.slots)}

    def restrict(
            self,
            talks: Sequence[int],
            slots: Sequence[int]
    ) -> "SchedulingInstance":
        """
        Sub-instance over a subset of talks and slots, same participants.

        Args:
            talks: Talk indices to keep, in the order they should appear
            slots: Slot indices to keep, in chronological order

        Returns:
            New SchedulingInstance
        """
        talks = list(talks)
        slots = list(slots)
        return SchedulingInstance(
            participant_ids=self.participant_ids,
            talk_ids=tuple(self.talk_ids[t] for t in talks),
            slots=tuple(self.slots[s] for s in slots),
            interest=self.interest[:, talks],
            availability=self.availability[:, slots],
            weights=self.weights,
            talk_priorities=tuple(self.talk_priorities[t] for t in talks)
        )

    def with_participants(
            self,
            participant_ids: Sequence[str],
            interest: np.ndarray,
            availability: np.ndarray,
            weights: np.ndarray
    ) -> "SchedulingInstance":
        """Same talks and slots with a different participant population."""
        return SchedulingInstance(
            participant_ids=tuple(participant_ids),
            talk_ids=self.talk_ids,
            slots=self.slots,
            interest=interest,
            availability=availability,
            weights=weights,
            talk_priorities=self.talk_priorities
        )
