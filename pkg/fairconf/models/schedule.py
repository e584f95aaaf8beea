# fairconf/models/schedule.py
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

import numpy as np


@dataclass(frozen=True)
class Schedule:
    """
    Talk index -> slot index assignment, stored as pairs sorted by talk.

    A single-round schedule covers every talk of its instance; a round of a
    MultiRoundSchedule covers only that round's talks.
    """

    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        normalized = tuple(sorted((int(t), int(s)) for t, s in self.pairs))
        object.__setattr__(self, "pairs", normalized)

    @classmethod
    def from_mapping(cls, assignment: Mapping[int, int]) -> "Schedule":
        return cls(tuple(assignment.items()))

    @classmethod
    def from_array(cls, slots_by_talk: Sequence[int]) -> "Schedule":
        """Build from an array whose t-th entry is the slot of talk t."""
        return cls(tuple(enumerate(int(s) for s in slots_by_talk)))

    @property
    def assignment(self) -> Dict[int, int]:
        return dict(self.pairs)

    @property
    def talks(self) -> Tuple[int, ...]:
        return tuple(t for t, _ in self.pairs)

    @property
    def slots(self) -> Tuple[int, ...]:
        return tuple(s for _, s in self.pairs)

    def slot_of(self, talk: int) -> int:
        return self.assignment[talk]

    def to_array(self) -> np.ndarray:
        """Slot per talk, ordered by talk index; requires talks 0..n-1."""
        return np.array(self.slots, dtype=np.int64)

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class MultiRoundSchedule:
    """Ordered rounds; slots are never reused, talks may repeat across rounds."""

    rounds: Tuple[Schedule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rounds", tuple(self.rounds))

    @classmethod
    def single(cls, schedule: Schedule) -> "MultiRoundSchedule":
        return cls((schedule,))

    def all_pairs(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(pair for schedule in self.rounds for pair in schedule.pairs)

    @property
    def used_slots(self) -> Tuple[int, ...]:
        return tuple(sorted(s for _, s in self.all_pairs()))

    def slots_by_talk(self) -> Dict[int, Tuple[int, ...]]:
        grouped: Dict[int, list] = {}
        for t, s in self.all_pairs():
            grouped.setdefault(t, []).append(s)
        return {t: tuple(sorted(slots)) for t, slots in grouped.items()}


AnySchedule = Union[Schedule, MultiRoundSchedule]


def assignment_pairs(schedule: AnySchedule) -> Tuple[np.ndarray, np.ndarray]:
    """Talk and slot index arrays for every assignment of a (multi-round) schedule."""
    pairs: Iterable = (
        schedule.all_pairs() if isinstance(schedule, MultiRoundSchedule) else schedule.pairs
    )
    pairs = list(pairs)
    if not pairs:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    talks, slots = zip(*pairs)
    return np.array(talks, dtype=np.int64), np.array(slots, dtype=np.int64)
