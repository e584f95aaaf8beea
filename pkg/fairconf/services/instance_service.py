# fairconf/services/instance_service.py
import logging
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd
from pydantic import ValidationError

from fairconf.exceptions.instance_exceptions import (
    DimensionMismatchError,
    DuplicateIdError,
    InvalidScheduleError,
    ParseError,
    RangeViolationError,
    ScheduleIoError,
    SlotOverlapError,
    TooManyTalksError
)
from fairconf.models.instance import SchedulingInstance, Slot
from fairconf.models.schedule import AnySchedule, MultiRoundSchedule, Schedule
from fairconf.schemas.instance import InstanceSchema
from fairconf.schemas.schedule import ScheduleDocumentSchema

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SLOTS_FILE = "slots.csv"
INTEREST_FILE = "interest.csv"
AVAILABILITY_FILE = "availability.csv"


class InstanceService:
    """Validation and file formats of instances and schedules."""

    @staticmethod
    def validate_instance(instance: SchedulingInstance) -> SchedulingInstance:
        """
        Check every structural invariant of an instance.

        Args:
            instance: Instance to check

        Returns:
            The same instance

        Raises:
            DimensionMismatchError: Matrix or weight shapes disagree with the id lists
            RangeViolationError: Probability outside [0, 1] or non-positive weight
            SlotOverlapError: Slots out of order or overlapping
            TooManyTalksError: More talks than slots
            DuplicateIdError: Repeated participant, talk or slot id
        """
        m, n, l = instance.m, instance.n, instance.l

        if instance.interest.shape != (m, n):
            raise DimensionMismatchError(
                f"Interest matrix is {instance.interest.shape}, expected {(m, n)}"
            )
        if instance.availability.shape != (m, l):
            raise DimensionMismatchError(
                f"Availability matrix is {instance.availability.shape}, expected {(m, l)}"
            )
        if instance.weights.shape != (m,):
            raise DimensionMismatchError(
                f"Expected {m} participant weights, got {instance.weights.shape[0]}"
            )
        if m == 0:
            raise DimensionMismatchError("Instance has no participants")
        if n == 0:
            raise DimensionMismatchError("Instance has no talks")
        if n > l:
            raise TooManyTalksError(n, l)

        for name, matrix in (("interest", instance.interest), ("availability", instance.availability)):
            if not np.all(np.isfinite(matrix)) or np.any(matrix < 0.0) or np.any(matrix > 1.0):
                raise RangeViolationError(f"{name} entries must lie in [0, 1]")
        if not np.all(np.isfinite(instance.weights)) or np.any(instance.weights <= 0.0):
            raise RangeViolationError("Participant weights must be strictly positive")

        for kind, ids in (
                ("participant", instance.participant_ids),
                ("talk", instance.talk_ids),
                ("slot", tuple(slot.id for slot in instance.slots))
        ):
            seen = set()
            for entity_id in ids:
                if entity_id in seen:
                    raise DuplicateIdError(kind, entity_id)
                seen.add(entity_id)

        for previous, current in zip(instance.slots, instance.slots[1:]):
            if previous.end_utc_min > current.start_utc_min:
                raise SlotOverlapError(
                    f"Slot {current.id} starts before slot {previous.id} ends"
                )
        for slot in instance.slots:
            if slot.duration_min <= 0:
                raise SlotOverlapError(f"Slot {slot.id} has non-positive duration")

        return instance

    @staticmethod
    def load_instance(path: PathLike, fmt: Optional[str] = None) -> SchedulingInstance:
        """
        Read and validate an instance.

        Args:
            path: JSON file, or a directory holding the CSV triplet
            fmt: "json" or "csv"; inferred from the path when omitted

        Returns:
            Validated instance
        """
        path = Path(path)
        fmt = fmt or ("csv" if path.is_dir() else "json")
        if fmt == "json":
            instance = InstanceService._read_json(path)
        elif fmt == "csv":
            instance = InstanceService._read_csv_triplet(path)
        else:
            raise ParseError(f"Unknown instance format {fmt!r}")

        logger.info(f"Loaded instance {path}: m={instance.m} n={instance.n} l={instance.l}")
        return InstanceService.validate_instance(instance)

    @staticmethod
    def _read_json(path: Path) -> SchedulingInstance:
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Cannot read {path}: {e}")
        try:
            document = InstanceSchema.model_validate_json(text)
        except ValidationError as e:
            raise ParseError(f"Malformed instance file {path}: {e.error_count()} error(s)")
        return document.to_instance()

    @staticmethod
    def _read_csv_triplet(directory: Path) -> SchedulingInstance:
        try:
            slots = pd.read_csv(directory / SLOTS_FILE, dtype={"id": str})
            interest = _read_matrix(directory / INTEREST_FILE)
            availability = _read_matrix(directory / AVAILABILITY_FILE)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as e:
            raise ParseError(f"Cannot read CSV triplet in {directory}: {e}")

        missing = {"id", "start_utc_min", "duration_min"} - set(slots.columns)
        if missing:
            raise ParseError(f"{SLOTS_FILE} lacks columns {sorted(missing)}")
        if len(interest.index) != len(availability.index):
            raise DimensionMismatchError(
                f"{INTEREST_FILE} has {len(interest.index)} participants, "
                f"{AVAILABILITY_FILE} has {len(availability.index)}"
            )
        if list(interest.index) != list(availability.index):
            raise DimensionMismatchError("Participant ids differ between interest and availability")
        slot_ids = [str(s) for s in slots["id"]]
        if [str(c) for c in availability.columns] != slot_ids:
            raise DimensionMismatchError(f"{AVAILABILITY_FILE} columns do not match {SLOTS_FILE}")

        try:
            return SchedulingInstance(
                participant_ids=tuple(str(p) for p in interest.index),
                talk_ids=tuple(str(t) for t in interest.columns),
                slots=tuple(
                    Slot(str(row.id), int(row.start_utc_min), int(row.duration_min))
                    for row in slots.itertuples(index=False)
                ),
                interest=interest.to_numpy(dtype=float),
                availability=availability.to_numpy(dtype=float)
            )
        except (TypeError, ValueError) as e:
            raise ParseError(f"Non-numeric entry in CSV triplet {directory}: {e}")

    @staticmethod
    def save_instance(instance: SchedulingInstance, path: PathLike, fmt: str = "json") -> None:
        path = Path(path)
        if fmt == "json":
            path.write_text(InstanceSchema.from_instance(instance).model_dump_json(indent=2))
            return
        if fmt != "csv":
            raise ParseError(f"Unknown instance format {fmt!r}")

        path.mkdir(parents=True, exist_ok=True)
        pd.DataFrame({
            "id": [slot.id for slot in instance.slots],
            "start_utc_min": [slot.start_utc_min for slot in instance.slots],
            "duration_min": [slot.duration_min for slot in instance.slots]
        }).to_csv(path / SLOTS_FILE, index=False)
        index = pd.Index(instance.participant_ids, name="participant")
        pd.DataFrame(instance.interest, index=index, columns=list(instance.talk_ids)).to_csv(
            path / INTEREST_FILE
        )
        pd.DataFrame(
            instance.availability, index=index, columns=[slot.id for slot in instance.slots]
        ).to_csv(path / AVAILABILITY_FILE)

    @staticmethod
    def validate_schedule(
            instance: SchedulingInstance,
            schedule: AnySchedule
    ) -> AnySchedule:
        """
        Check a schedule against an instance.

        A single-round schedule (or a multi-round one with exactly one round)
        must place every talk exactly once. Across rounds no slot is reused.

        Raises:
            InvalidScheduleError: On any violated invariant
        """
        rounds = schedule.rounds if isinstance(schedule, MultiRoundSchedule) else (schedule,)
        used_slots = set()
        for index, round_ in enumerate(rounds):
            talks = round_.talks
            if len(set(talks)) != len(talks):
                raise InvalidScheduleError(f"Round {index + 1} places a talk twice")
            for t, s in round_.pairs:
                if not 0 <= t < instance.n:
                    raise InvalidScheduleError(f"Talk index {t} outside 0..{instance.n - 1}")
                if not 0 <= s < instance.l:
                    raise InvalidScheduleError(f"Slot index {s} outside 0..{instance.l - 1}")
                if s in used_slots:
                    raise InvalidScheduleError(f"Slot {instance.slots[s].id} is used twice")
                used_slots.add(s)

        if len(rounds) == 1 and len(rounds[0]) != instance.n:
            raise InvalidScheduleError(
                f"Schedule places {len(rounds[0])} of {instance.n} talks"
            )
        return schedule

    @staticmethod
    def save_schedule(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            path: PathLike
    ) -> None:
        document = ScheduleDocumentSchema.from_schedule(instance, schedule)
        try:
            Path(path).write_text(document.model_dump_json(indent=2))
        except OSError as e:
            raise ScheduleIoError(f"Cannot write schedule {path}: {e}")

    @staticmethod
    def load_schedule(path: PathLike, instance: SchedulingInstance) -> AnySchedule:
        """
        Read a schedule file and resolve its ids against an instance.

        Returns:
            A Schedule when the file has one round, otherwise a MultiRoundSchedule
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ScheduleIoError(f"Cannot read schedule {path}: {e}")
        try:
            document = ScheduleDocumentSchema.model_validate_json(text)
        except ValidationError as e:
            raise ParseError(f"Malformed schedule file {path}: {e.error_count()} error(s)")

        multi = document.to_schedule(instance)
        schedule: AnySchedule = multi.rounds[0] if len(multi.rounds) == 1 else multi
        return InstanceService.validate_schedule(instance, schedule)


def _read_matrix(path: Path) -> pd.DataFrame:
    """Participant-by-column table; the first column holds participant ids."""
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    return frame.set_index(frame.columns[0])
