# tests/test_lp_service.py
import numpy as np
import pytest

from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.lp_service import LPService
from fairconf.services.metrics_service import MetricsService
from fairconf.services.solver_service import SolverService

from tests.conftest import brute_force_objectives, small_random_instances

BALANCED = ObjectiveSpec(w_eff=1.0, lambda1=0.5, lambda2=0.5)


def test_constraint_count(example3):
    lp = LPService.build_joint_lp(example3, BALANCED)
    n, l, m = example3.n, example3.l, example3.m
    assert lp.n_variables == n * l + 4
    assert lp.n_constraints == n + l + 2 * m + 2 * n
    assert len(lp.row_names) == lp.n_constraints


def test_efficiency_optimum_example1(example1):
    solution = LPService.solve_lp(LPService.build_joint_lp(example1, ObjectiveSpec.efficiency()))
    assert solution.objective_value == pytest.approx(0.5, abs=1e-9)
    assert solution.status == "optimal"


def test_speaker_fair_optimum_example3(example3):
    solution = LPService.solve_lp(LPService.build_joint_lp(example3, ObjectiveSpec.speaker_fair()))
    assert solution.objective_value == pytest.approx(0.0, abs=1e-9)


def test_solution_is_feasible():
    for instance in small_random_instances(10, seed=3):
        x = LPService.solve_lp(LPService.build_joint_lp(instance, BALANCED)).x
        assert np.all(x >= 0.0)
        np.testing.assert_allclose(x.sum(axis=1), 1.0, atol=1e-8)
        assert np.all(x.sum(axis=0) <= 1.0 + 1e-8)


def test_efficiency_relaxation_is_integral():
    for instance in small_random_instances(50):
        solution = LPService.solve_lp(LPService.build_joint_lp(instance, ObjectiveSpec.efficiency()))
        em = SolverService.solve_em(instance)
        tep = MetricsService.tep(instance, em.schedule)
        assert solution.objective_value * instance.total_weight * instance.n == pytest.approx(tep, abs=1e-6)


def test_auxiliary_bounds_are_tight(example3):
    lp = LPService.build_joint_lp(example3, ObjectiveSpec(w_eff=1.0, lambda1=1.0))
    solution = LPService.solve_lp(lp)
    gains = np.einsum("pt,ps->pts", example3.interest, example3.availability).reshape(example3.m, -1)
    ncg = gains @ solution.x.ravel() / MetricsService.ideal_cumulative_gains(example3)
    assert solution.u_lo == pytest.approx(ncg.min(), abs=1e-7)
    assert solution.u_hi == pytest.approx(ncg.max(), abs=1e-7)


def test_relaxation_bounds_every_schedule():
    for instance in small_random_instances(15, seed=23):
        solution = LPService.solve_lp(LPService.build_joint_lp(instance, BALANCED))
        assert solution.objective_value >= brute_force_objectives(instance, BALANCED).max() - 1e-7


def test_duality_gap_certified(example2):
    solution = LPService.solve_lp(LPService.build_joint_lp(example2, BALANCED))
    if solution.duality_gap is not None:
        assert solution.duality_gap <= 1e-6


def test_lp_text(example1):
    text = LPService.build_joint_lp(example1, ObjectiveSpec(w_eff=1.0, lambda1=1.0)).to_lp_text()
    lines = text.splitlines()
    assert lines[1] == "Maximize"
    assert "Subject To" in lines and "Bounds" in lines
    assert lines[-1] == "End"
    assert any(line.startswith(" talk_0:") and line.endswith("= 1") for line in lines)
    assert " u_lo free" in lines
    assert " v_lo = 0" not in lines
