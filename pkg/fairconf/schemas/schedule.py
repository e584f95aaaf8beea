# fairconf/schemas/schedule.py
from typing import List

from pydantic import BaseModel, ConfigDict

from fairconf.exceptions.instance_exceptions import UnknownSlotIdError, UnknownTalkIdError
from fairconf.models.instance import SchedulingInstance
from fairconf.models.schedule import AnySchedule, MultiRoundSchedule, Schedule


class AssignmentSchema(BaseModel):
    """One talk placed in one slot, by id."""

    talk: str
    slot: str


class ScheduleDocumentSchema(BaseModel):
    """Schedule file: ordered rounds of talk/slot pairs."""

    model_config = ConfigDict(extra="forbid")

    rounds: List[List[AssignmentSchema]]

    @classmethod
    def from_schedule(
            cls,
            instance: SchedulingInstance,
            schedule: AnySchedule
    ) -> "ScheduleDocumentSchema":
        """
        Serialize a schedule, one list per round, each round sorted by talk id.

        Args:
            instance: Instance the schedule indexes into
            schedule: Single or multi-round schedule

        Returns:
            Document ready for JSON output
        """
        rounds = schedule.rounds if isinstance(schedule, MultiRoundSchedule) else (schedule,)
        return cls(rounds=[
            sorted(
                (
                    AssignmentSchema(talk=instance.talk_ids[t], slot=instance.slots[s].id)
                    for t, s in round_.pairs
                ),
                key=lambda item: item.talk
            )
            for round_ in rounds
        ])

    def to_schedule(self, instance: SchedulingInstance) -> MultiRoundSchedule:
        """Resolve ids against an instance; raises UnknownTalkIdError or UnknownSlotIdError."""
        rounds = []
        for round_ in self.rounds:
            pairs = []
            for item in round_:
                try:
                    talk = instance.talk_index(item.talk)
                except KeyError:
                    raise UnknownTalkIdError(item.talk)
                try:
                    slot = instance.slot_index(item.slot)
                except KeyError:
                    raise UnknownSlotIdError(item.slot)
                pairs.append((talk, slot))
            rounds.append(Schedule(tuple(pairs)))
        return MultiRoundSchedule(tuple(rounds))
