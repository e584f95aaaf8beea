# tests/test_datagen_service.py
import numpy as np
import pytest

from fairconf.core.config import settings
from fairconf.exceptions.datagen_exceptions import InvalidDimsError, InvalidGeneratorSpecError
from fairconf.schemas.generator import GeneratorSpec, SlotGridSpec
from fairconf.services.datagen_service import DatagenService
from fairconf.services.metrics_service import MetricsService

HALF_HOURS = DatagenService.slot_grid(SlotGridSpec(count=48, duration_min=30))


def test_uniform_is_deterministic():
    first = DatagenService.gen_uniform(5, 4, 6, seed=42)
    second = DatagenService.gen_uniform(5, 4, 6, seed=42)
    np.testing.assert_array_equal(first.interest, second.interest)
    np.testing.assert_array_equal(first.availability, second.availability)

    other = DatagenService.gen_uniform(5, 4, 6, seed=43)
    assert not np.array_equal(first.interest, other.interest)


def test_uniform_shapes_and_range():
    instance = DatagenService.gen_uniform(200, 10, 12, seed=1)
    assert instance.interest.shape == (200, 10)
    assert instance.availability.shape == (200, 12)
    assert instance.interest.min() >= 0.0 and instance.interest.max() < 1.0
    assert instance.interest.mean() == pytest.approx(0.5, abs=0.05)


def test_uniform_rejects_more_talks_than_slots():
    with pytest.raises(InvalidDimsError):
        DatagenService.gen_uniform(3, 5, 4, seed=0)


def test_workday_has_sixteen_half_hours():
    availability = DatagenService.gen_timezone_availability([0], HALF_HOURS)
    assert availability.sum() == 16
    assert np.flatnonzero(availability[0]).tolist() == list(range(18, 34))


def test_offset_shift_rotates_availability():
    utc, shifted = DatagenService.gen_timezone_availability([0, 720], HALF_HOURS)
    np.testing.assert_array_equal(shifted, np.roll(utc, 24))


def test_full_day_offset_is_identity():
    utc, wrapped = DatagenService.gen_timezone_availability([0, 1440], HALF_HOURS)
    np.testing.assert_array_equal(utc, wrapped)


def test_partial_day_grid_rejected():
    grid = DatagenService.slot_grid(SlotGridSpec(count=10, duration_min=60))
    with pytest.raises(InvalidGeneratorSpecError):
        DatagenService.gen_timezone_availability([0], grid)


def test_bernoulli_constant_popularity_is_all_ones():
    interest = DatagenService.gen_interest_bernoulli([5.0, 5.0, 5.0], m=50, seed=3)
    assert np.all(interest == 1.0)


def test_bernoulli_rate_follows_popularity():
    interest = DatagenService.gen_interest_bernoulli([10.0, 4.0], m=4000, seed=3)
    assert interest[:, 1].mean() == pytest.approx(0.4, abs=0.05)


def test_normal_zero_popularity_is_zero():
    interest = DatagenService.gen_interest_normal([10.0, 0.0], m=30, seed=9)
    assert np.all(interest[:, 1] == 0.0)
    assert interest.min() >= 0.0 and interest.max() <= 1.0


def test_partition_instance_has_unit_ideal_gain():
    instance = DatagenService.gen_partition_instance([3, 1, 2])
    assert (instance.n, instance.l) == (3, 6)
    np.testing.assert_allclose(MetricsService.ideal_cumulative_gains(instance), [1.0, 1.0])


def test_partition_rejects_non_positive_values():
    with pytest.raises(InvalidGeneratorSpecError):
        DatagenService.gen_partition_instance([2, 0])


def test_timezone_instance_is_deterministic():
    grid = SlotGridSpec(count=24, duration_min=60)
    first = DatagenService.gen_timezone_instance(30, 5, grid, seed=7)
    second = DatagenService.gen_timezone_instance(30, 5, grid, seed=7)
    np.testing.assert_array_equal(first.interest, second.interest)
    np.testing.assert_array_equal(first.availability, second.availability)
    assert set(np.unique(first.availability)) <= {0.0, 1.0}


@pytest.mark.parametrize("preset, dims", [
    ("fatrec", (40, 11, 96)),
    ("recsys", (1112, 26, 48)),
])
def test_presets(preset, dims):
    instance = DatagenService.generate(GeneratorSpec(preset=preset, seed=7))
    assert (instance.m, instance.n, instance.l) == dims
    assert instance.slots[-1].end_utc_min == 1440


def test_preset_override():
    instance = DatagenService.generate(GeneratorSpec(preset="fatrec", m=12, seed=1))
    assert (instance.m, instance.n) == (12, 11)


def test_generate_timezone_needs_day_divisor():
    with pytest.raises(InvalidGeneratorSpecError):
        DatagenService.generate(GeneratorSpec(kind="timezone", m=4, n=2, l=7))


def test_segregated_availability_groups():
    instance = DatagenService.gen_segregated("availability", split=5)
    assert (instance.m, instance.n, instance.l) == (10, 10, 15)
    np.testing.assert_allclose(instance.interest, np.tile(0.5 ** np.arange(10), (10, 1)))

    first, second = instance.availability[0], instance.availability[-1]
    assert first[0] == pytest.approx(1.0)
    assert first[-1] == pytest.approx(0.10452846326765346)
    np.testing.assert_allclose(second, first[::-1])
    np.testing.assert_array_equal(instance.availability[:5], np.tile(first, (5, 1)))
    np.testing.assert_array_equal(instance.availability[5:], np.tile(second, (5, 1)))


def test_segregated_interest_imbalanced_preset():
    instance = DatagenService.generate(GeneratorSpec(preset="segregated-interest-imbalanced"))
    assert (instance.m, instance.n, instance.l) == (10, 10, 15)
    assert instance.interest[:7, 0].tolist() == [1.0] * 7
    assert instance.interest[7:, -1].tolist() == [1.0] * 3
    assert instance.interest[7:, 0].tolist() == pytest.approx([0.001953125] * 3)
    np.testing.assert_array_equal(instance.availability, np.tile(instance.availability[0], (10, 1)))


def test_segregated_split_defaults_to_half():
    instance = DatagenService.generate(GeneratorSpec(kind="segregated", segregate="interest", m=6))
    rising = instance.interest[:, -1] == 1.0
    assert rising.tolist() == [False] * 3 + [True] * 3


def test_segregated_rejects_bad_split():
    with pytest.raises(InvalidDimsError):
        DatagenService.gen_segregated("availability", split=11)
    with pytest.raises(InvalidGeneratorSpecError):
        DatagenService.gen_segregated("slots", split=5)


def test_seed_defaults_to_settings():
    assert GeneratorSpec().seed == settings.DEFAULT_SEED
