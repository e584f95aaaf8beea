# tests/test_clustering_service.py
import numpy as np
import pytest

from fairconf.exceptions.datagen_exceptions import InvalidDimsError
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.clustering_service import ClusteringService
from fairconf.services.datagen_service import DatagenService
from fairconf.services.metrics_service import MetricsService
from fairconf.services.solver_service import SolverService

BALANCED = ObjectiveSpec(w_eff=1.0, lambda1=0.5, lambda2=0.5)


def _duplicated(groups: int, copies: int, n: int = 4, l: int = 6, seed: int = 0):
    base = DatagenService.gen_uniform(groups, n, l, seed=seed)
    rows = np.repeat(np.arange(groups), copies)
    return base.with_participants(
        tuple(f"p{i + 1}" for i in range(groups * copies)),
        base.interest[rows],
        base.availability[rows],
        np.ones(groups * copies)
    )


def test_profiles(example3):
    profiles = ClusteringService.build_profiles(example3)
    np.testing.assert_allclose(profiles[0], [1.0, 0.7, 1.0, 1.0, 0.0, 0.2])


def test_k_equals_m_keeps_participants():
    instance = DatagenService.gen_uniform(7, 3, 5, seed=12)
    profiles = ClusteringService.build_profiles(instance)
    model = ClusteringService.kmeans(profiles, 7, seed=3)

    assert model.labels.tolist() == list(range(7))
    np.testing.assert_array_equal(model.centroids, profiles)
    assert model.inertia == 0.0


def test_k_equals_m_solves_identically():
    for seed in range(10):
        instance = DatagenService.gen_uniform(5, 4, 6, seed=100 + seed)
        direct = SolverService.solve(instance, "mfairconf", BALANCED)
        clustered, model = ClusteringService.solve_clustered(instance, instance.m, "mfairconf", BALANCED)

        assert clustered.schedule == direct.schedule
        assert clustered.objective_value == direct.objective_value
        assert model.sizes.tolist() == [1] * instance.m


def test_duplicate_groups_recovered():
    instance = _duplicated(groups=3, copies=4)
    model = ClusteringService.kmeans(ClusteringService.build_profiles(instance), 3, seed=5)

    assert model.sizes.tolist() == [4, 4, 4]
    assert model.labels.tolist() == [0] * 4 + [1] * 4 + [2] * 4
    assert model.inertia == pytest.approx(0.0, abs=1e-12)


def test_duplicate_groups_keep_efficiency():
    instance = _duplicated(groups=3, copies=4, seed=8)
    direct = SolverService.solve(instance, "em")
    clustered, _ = ClusteringService.solve_clustered(instance, 3, "em")
    assert MetricsService.tep(instance, clustered.schedule) == pytest.approx(
        MetricsService.tep(instance, direct.schedule), abs=1e-9
    )


def test_inertia_non_increasing():
    rng = np.random.Generator(np.random.PCG64(4))
    for _ in range(10):
        profiles = rng.random((60, 8))
        model = ClusteringService.kmeans(profiles, 5, seed=int(rng.integers(1000)))
        history = np.array(model.inertia_history)
        assert np.all(np.diff(history) <= 1e-9)


def test_clustered_instance_weights():
    instance = DatagenService.gen_uniform(30, 4, 6, seed=1)
    model = ClusteringService.kmeans(ClusteringService.build_profiles(instance), 4, seed=0)
    reduced = ClusteringService.clustered_instance(instance, model)

    assert reduced.m == 4
    assert reduced.participant_ids[0] == "cluster-1"
    assert reduced.total_weight == pytest.approx(30.0)
    assert (reduced.n, reduced.l) == (instance.n, instance.l)


def test_kmeans_is_seeded():
    profiles = ClusteringService.build_profiles(DatagenService.gen_uniform(40, 3, 5, seed=6))
    first = ClusteringService.kmeans(profiles, 4, seed=11)
    second = ClusteringService.kmeans(profiles, 4, seed=11)
    np.testing.assert_array_equal(first.labels, second.labels)


def test_kmeans_rejects_bad_k():
    with pytest.raises(InvalidDimsError):
        ClusteringService.kmeans(np.zeros((3, 2)), 4)
