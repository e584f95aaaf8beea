# tests/test_metrics_service.py
import itertools

import numpy as np
import pytest

from fairconf.exceptions.metrics_exceptions import (
    AllZeroError,
    DegenerateParticipantError,
    NegativeValuesError
)
from fairconf.models.instance import SchedulingInstance
from fairconf.models.schedule import MultiRoundSchedule, Schedule
from fairconf.services.datagen_service import DatagenService
from fairconf.services.metrics_service import MetricsService

from tests.conftest import all_schedules, small_random_instances


def test_example1_efficient_schedule(example1):
    schedule = Schedule.from_array([0])
    assert MetricsService.tep(example1, schedule) == pytest.approx(1.0)
    assert MetricsService.participant_unfairness(example1, schedule) == pytest.approx(1.0)


def test_example1_fair_schedule(example1):
    schedule = Schedule.from_array([1])
    assert MetricsService.tep(example1, schedule) == pytest.approx(0.98)
    assert MetricsService.participant_unfairness(example1, schedule) == pytest.approx(0.0)
    assert MetricsService.ncg(example1, schedule, 0) == pytest.approx(0.49)
    assert MetricsService.ncg(example1, schedule, 1) == pytest.approx(0.49)


def test_example2_nec(example2):
    efficient = Schedule(((0, 0), (1, 2)))
    assert MetricsService.tep(example2, efficient) == pytest.approx(1.4)
    assert MetricsService.nec_vector(example2, efficient)[0] == pytest.approx([1.0, 0.8])

    fair = Schedule(((0, 2), (1, 1)))
    assert MetricsService.tep(example2, fair) == pytest.approx(1.175)
    assert MetricsService.nec_vector(example2, fair)[0] == pytest.approx([0.8, 0.75])


def test_example3_ncg_and_nec(example3):
    speaker_fair = Schedule.from_array([1, 2])
    assert MetricsService.ncg_vector(example3, speaker_fair)[0] == pytest.approx([1 / 1.7, 0.7 / 1.7])
    assert MetricsService.nec_vector(example3, speaker_fair)[0] == pytest.approx([0.5, 0.5])

    participant_fair = Schedule.from_array([0, 3])
    assert MetricsService.cumulative_gains(example3, participant_fair) == pytest.approx([1.14, 1.14])
    assert MetricsService.nec_vector(example3, participant_fair)[0] == pytest.approx([1.0, 0.2])


def test_ideal_gain_bounds_every_schedule():
    for instance in small_random_instances(20, seed=11):
        ideal = MetricsService.ideal_cumulative_gains(instance)
        gains = np.array([
            MetricsService.cumulative_gains(instance, schedule)
            for schedule in all_schedules(instance)
        ])
        assert np.all(gains <= ideal + 1e-12)
        np.testing.assert_allclose(gains.max(axis=0), ideal, atol=1e-12)


def test_ideal_crowd_is_best_slot(example3):
    assert MetricsService.ideal_expected_crowds(example3) == pytest.approx([2.0, 1.4])


def test_tep_identities():
    for instance in small_random_instances(10, seed=5):
        schedule = Schedule.from_array(np.arange(instance.n))
        tep = MetricsService.tep(instance, schedule)
        assert tep == pytest.approx(MetricsService.cumulative_gains(instance, schedule).sum())
        assert tep == pytest.approx(MetricsService.expected_crowds(instance, schedule).sum())


def test_degenerate_participant_excluded():
    instance = SchedulingInstance(
        participant_ids=("p1", "p2", "p3"),
        talk_ids=("t1",),
        slots=DatagenService.gen_uniform(1, 1, 2, seed=0).slots,
        interest=np.array([[1.0], [0.5], [1.0]]),
        availability=np.array([[1.0, 0.0], [1.0, 0.5], [0.0, 0.0]])
    )
    schedule = Schedule.from_array([0])
    values, degenerate = MetricsService.ncg_vector(instance, schedule)

    assert degenerate.tolist() == [False, False, True]
    assert values[2] == 1.0
    assert MetricsService.participant_unfairness(instance, schedule) == pytest.approx(0.0)
    with pytest.raises(DegenerateParticipantError):
        MetricsService.ncg(instance, schedule, 2, strict=True)

    report = MetricsService.build_report(instance, schedule)
    assert report.degenerate_participants == ["p3"]
    assert report.ncg_mean == pytest.approx(1.0)


@pytest.mark.parametrize("values, expected", [
    ([0.0, 1.0], 0.5),
    ([3.0, 3.0, 3.0], 0.0),
    ([0.0, 0.0, 0.0, 1.0], 0.75),
])
def test_gini(values, expected):
    assert MetricsService.gini(values) == pytest.approx(expected)


def test_gini_scale_invariant():
    values = np.array([0.2, 0.5, 0.9, 0.1])
    assert MetricsService.gini(values * 7.0) == pytest.approx(MetricsService.gini(values))


def test_gini_rejects_bad_input():
    with pytest.raises(AllZeroError):
        MetricsService.gini([0.0, 0.0])
    with pytest.raises(NegativeValuesError):
        MetricsService.gini([-0.1, 1.0])


def test_all_zero_gini_reported_as_zero():
    instance = DatagenService.gen_uniform(2, 2, 4, seed=3)
    instance = instance.with_participants(
        instance.participant_ids,
        instance.interest,
        np.array([[0.0, 0.0, 1.0, 1.0], [0.0, 0.0, 1.0, 1.0]]),
        instance.weights
    )
    report = MetricsService.build_report(instance, Schedule.from_array([0, 1]))
    assert report.ncg_gini == 0.0
    assert report.nec_gini == 0.0


def test_contiguity_histogram():
    instance = DatagenService.gen_uniform(2, 6, 12, seed=1)
    schedule = Schedule.from_array([0, 1, 5, 7, 8, 9])
    assert MetricsService.contiguity_histogram(instance, schedule) == {1: 1, 2: 1, 3: 1}


def test_repetition_gaps():
    instance = DatagenService.gen_uniform(2, 1, 24, seed=1)
    twice = MultiRoundSchedule((Schedule(((0, 9),)), Schedule(((0, 21),))))
    assert MetricsService.repetition_gaps(instance, twice) == {0: [12.0]}

    thrice = MultiRoundSchedule((Schedule(((0, 9),)), Schedule(((0, 0),)), Schedule(((0, 4),))))
    assert MetricsService.repetition_gaps(instance, thrice) == {0: [4.0, 5.0]}

    once = Schedule(((0, 3),))
    assert MetricsService.repetition_gaps(instance, once) == {0: []}


def test_repeated_talk_accumulates_crowd(example3):
    first = Schedule(((0, 1),))
    repeated = MultiRoundSchedule((first, Schedule(((0, 2),))))
    single = MetricsService.nec_vector(example3, first)[0][0]
    twice = MetricsService.nec_vector(example3, repeated)[0][0]
    assert twice == pytest.approx(1.0)
    assert twice >= single


def _generated_instances():
    yield from small_random_instances(20, seed=41)
    yield DatagenService.gen_segregated("availability", split=7, n=4, l=6)
    yield DatagenService.gen_segregated("interest", split=5, n=4, l=6)
    yield DatagenService.gen_partition_instance([3, 1, 2])


def test_normalized_values_lie_in_unit_interval():
    for instance in _generated_instances():
        schedules = list(itertools.islice(all_schedules(instance), 200))
        for schedule in schedules:
            ncg, _ = MetricsService.ncg_vector(instance, schedule)
            nec, _ = MetricsService.nec_vector(instance, schedule)
            assert np.all(ncg >= 0.0) and np.all(ncg <= 1.0 + 1e-12)
            assert np.all(nec >= 0.0) and np.all(nec <= 1.0 + 1e-12)


def test_unfairness_invariant_under_relabeling():
    rng = np.random.Generator(np.random.PCG64(5))
    for instance in small_random_instances(20, seed=43):
        schedule = Schedule.from_array(rng.permutation(instance.l)[:instance.n])
        people = rng.permutation(instance.m)
        talks = rng.permutation(instance.n)
        relabeled = SchedulingInstance(
            participant_ids=tuple(instance.participant_ids[p] for p in people),
            talk_ids=tuple(instance.talk_ids[t] for t in talks),
            slots=instance.slots,
            interest=instance.interest[people][:, talks],
            availability=instance.availability[people]
        )
        moved = Schedule.from_array(schedule.to_array()[talks])

        assert MetricsService.participant_unfairness(relabeled, moved) == pytest.approx(
            MetricsService.participant_unfairness(instance, schedule), abs=1e-12
        )
        assert MetricsService.speaker_unfairness(relabeled, moved) == pytest.approx(
            MetricsService.speaker_unfairness(instance, schedule), abs=1e-12
        )
