# tests/conftest.py
import itertools
from typing import Iterator, List

import numpy as np
import pytest

from fairconf.fixtures import fixture_path
from fairconf.models.instance import SchedulingInstance
from fairconf.models.schedule import Schedule
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.datagen_service import DatagenService
from fairconf.services.instance_service import InstanceService


@pytest.fixture
def example1() -> SchedulingInstance:
    return InstanceService.load_instance(fixture_path("example_problem_1"))


@pytest.fixture
def example2() -> SchedulingInstance:
    return InstanceService.load_instance(fixture_path("example_problem_2"))


@pytest.fixture
def example3() -> SchedulingInstance:
    return InstanceService.load_instance(fixture_path("example_problem_3"))


@pytest.fixture
def uniform666() -> SchedulingInstance:
    return InstanceService.load_instance(fixture_path("uniform_6x6x6"))


def small_random_instances(count: int, seed: int = 2024) -> List[SchedulingInstance]:
    """m <= 8, n <= 6, n <= l <= 8, each instance with its own seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    instances = []
    for index in range(count):
        n = int(rng.integers(1, 7))
        l = int(rng.integers(n, 9))
        m = int(rng.integers(1, 9))
        instances.append(DatagenService.gen_uniform(m, n, l, seed=seed * 1000 + index))
    return instances


def all_assignments(instance: SchedulingInstance) -> np.ndarray:
    """Every injective talk -> slot vector, one per row."""
    rows = list(itertools.permutations(range(instance.l), instance.n))
    return np.array(rows, dtype=np.int64).reshape(len(rows), instance.n)


def all_schedules(instance: SchedulingInstance) -> Iterator[Schedule]:
    for row in all_assignments(instance):
        yield Schedule.from_array(row)


def brute_force_objectives(instance: SchedulingInstance, objective: ObjectiveSpec) -> np.ndarray:
    """Scalarized objective of every assignment, computed directly from V and A."""
    assignments = all_assignments(instance)
    talks = np.arange(instance.n)
    weights = instance.weights

    gains = np.stack([
        (instance.interest[p, talks][None, :] * instance.availability[p][assignments]).sum(axis=1)
        for p in range(instance.m)
    ])
    crowds = np.einsum("p,pt,pkt->kt", weights, instance.interest,
                       instance.availability[:, assignments])

    interest_sorted = -np.sort(-instance.interest, axis=1)
    availability_sorted = -np.sort(-instance.availability, axis=1)[:, :instance.n]
    icg = (interest_sorted * availability_sorted).sum(axis=1)
    iec = ((weights[:, None, None] * instance.interest[:, :, None]
            * instance.availability[:, None, :]).sum(axis=0)).max(axis=1)

    values = objective.w_eff * crowds.sum(axis=1) / (weights.sum() * instance.n)
    keep = icg > 0
    if keep.sum() > 1:
        ncg = gains[keep] / icg[keep, None]
        values = values - objective.lambda1 * (ncg.max(axis=0) - ncg.min(axis=0))
    keep = iec > 0
    if keep.sum() > 1:
        nec = crowds[:, keep] / iec[None, keep]
        values = values - objective.lambda2 * (nec.max(axis=1) - nec.min(axis=1))
    return values
