# tests/test_instance_service.py
import json

import numpy as np
import pytest

from fairconf.exceptions.instance_exceptions import (
    DimensionMismatchError,
    DuplicateIdError,
    InvalidScheduleError,
    ParseError,
    RangeViolationError,
    SlotOverlapError,
    TooManyTalksError,
    UnknownSlotIdError,
    UnknownTalkIdError
)
from fairconf.fixtures import fixture_path
from fairconf.models.instance import SchedulingInstance, Slot
from fairconf.models.schedule import MultiRoundSchedule, Schedule
from fairconf.services.instance_service import InstanceService


def _document(name: str) -> dict:
    return json.loads(fixture_path(name).read_text())


def _write(tmp_path, document: dict):
    path = tmp_path / "instance.json"
    path.write_text(json.dumps(document))
    return path


def test_example_problem_loads(example1):
    assert (example1.m, example1.n, example1.l) == (2, 1, 3)
    assert example1.talk_ids == ("t",)
    assert not example1.is_weighted


def test_interest_out_of_range(tmp_path):
    document = _document("example_problem_1")
    document["interest"][0][0] = 1.2
    with pytest.raises(RangeViolationError):
        InstanceService.load_instance(_write(tmp_path, document))


def test_more_talks_than_slots():
    slots = tuple(Slot(f"s{i}", 60 * i, 60) for i in range(3))
    instance = SchedulingInstance(
        participant_ids=("p",),
        talk_ids=("a", "b", "c", "d"),
        slots=slots,
        interest=np.full((1, 4), 0.5),
        availability=np.ones((1, 3))
    )
    with pytest.raises(TooManyTalksError):
        InstanceService.validate_instance(instance)


def test_instance_without_participants():
    slots = tuple(Slot(f"s{i}", 60 * i, 60) for i in range(3))
    instance = SchedulingInstance(
        participant_ids=(),
        talk_ids=("a", "b"),
        slots=slots,
        interest=np.zeros((0, 2)),
        availability=np.zeros((0, 3))
    )
    with pytest.raises(DimensionMismatchError, match="no participants"):
        InstanceService.validate_instance(instance)


def test_ragged_matrix_rejected(tmp_path):
    document = _document("example_problem_3")
    document["availability"][1] = [1, 0, 1]
    with pytest.raises(DimensionMismatchError):
        InstanceService.load_instance(_write(tmp_path, document))


def test_duplicate_talk_id(tmp_path):
    document = _document("example_problem_3")
    document["talks"][1]["id"] = document["talks"][0]["id"]
    with pytest.raises(DuplicateIdError):
        InstanceService.load_instance(_write(tmp_path, document))


def test_overlapping_slots(tmp_path):
    document = _document("example_problem_1")
    document["slots"][1]["start_utc_min"] = document["slots"][0]["start_utc_min"] + 30
    with pytest.raises(SlotOverlapError):
        InstanceService.load_instance(_write(tmp_path, document))


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\"participants\": [")
    with pytest.raises(ParseError):
        InstanceService.load_instance(path)


def test_json_round_trip(tmp_path, example2):
    path = tmp_path / "copy.json"
    InstanceService.save_instance(example2, path)
    loaded = InstanceService.load_instance(path)

    assert loaded.participant_ids == example2.participant_ids
    assert loaded.talk_ids == example2.talk_ids
    assert loaded.slots == example2.slots
    np.testing.assert_array_equal(loaded.interest, example2.interest)
    np.testing.assert_array_equal(loaded.availability, example2.availability)


def test_csv_round_trip(tmp_path, example3):
    directory = tmp_path / "triplet"
    InstanceService.save_instance(example3, directory, fmt="csv")
    loaded = InstanceService.load_instance(directory)

    assert loaded.participant_ids == example3.participant_ids
    assert loaded.slots == example3.slots
    np.testing.assert_allclose(loaded.interest, example3.interest)
    np.testing.assert_allclose(loaded.availability, example3.availability)


def test_csv_participant_count_mismatch(tmp_path, example3):
    directory = tmp_path / "triplet"
    InstanceService.save_instance(example3, directory, fmt="csv")
    availability = directory / "availability.csv"
    lines = availability.read_text().splitlines()
    availability.write_text("\n".join(lines[:-1]) + "\n")

    with pytest.raises(DimensionMismatchError):
        InstanceService.load_instance(directory)


def test_schedule_round_trip(tmp_path, example3):
    schedule = Schedule.from_array([1, 2])
    path = tmp_path / "schedule.json"
    InstanceService.save_schedule(example3, schedule, path)

    assert InstanceService.load_schedule(path, example3) == schedule
    document = json.loads(path.read_text())
    assert document["rounds"][0] == [{"talk": "t1", "slot": "s2"}, {"talk": "t2", "slot": "s3"}]


def test_multi_round_schedule_round_trip(tmp_path, example3):
    schedule = MultiRoundSchedule((Schedule(((0, 0),)), Schedule(((0, 3), (1, 1)))))
    path = tmp_path / "schedule.json"
    InstanceService.save_schedule(example3, schedule, path)

    loaded = InstanceService.load_schedule(path, example3)
    assert isinstance(loaded, MultiRoundSchedule)
    assert loaded.slots_by_talk() == {0: (0, 3), 1: (1,)}


def test_schedule_with_unknown_talk(tmp_path, example1, example3):
    path = tmp_path / "schedule.json"
    InstanceService.save_schedule(example3, Schedule.from_array([1, 2]), path)
    with pytest.raises(UnknownTalkIdError):
        InstanceService.load_schedule(path, example1)


def test_schedule_with_unknown_slot(tmp_path, example1):
    path = tmp_path / "schedule.json"
    path.write_text(json.dumps({"rounds": [[{"talk": "t", "slot": "s9"}]]}))
    with pytest.raises(UnknownSlotIdError):
        InstanceService.load_schedule(path, example1)


def test_slot_index_out_of_range(example3):
    with pytest.raises(InvalidScheduleError):
        InstanceService.validate_schedule(example3, Schedule(((0, 0), (1, 4))))


def test_slot_used_twice(example3):
    with pytest.raises(InvalidScheduleError):
        InstanceService.validate_schedule(example3, Schedule(((0, 1), (1, 1))))


def test_incomplete_single_round(example3):
    with pytest.raises(InvalidScheduleError):
        InstanceService.validate_schedule(example3, Schedule(((0, 1),)))
