# tests/test_acceptance.py
import pytest

from fairconf.schemas.generator import GeneratorSpec
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.datagen_service import DatagenService
from fairconf.services.metrics_service import MetricsService
from fairconf.services.pipeline_service import PipelineService
from fairconf.services.solver_service import SolverService

pytestmark = pytest.mark.slow

BALANCED = ObjectiveSpec.balanced()


def test_fatrec_fairness_ordering():
    instance = DatagenService.generate(GeneratorSpec(preset="fatrec", seed=7))
    em = SolverService.solve(instance, "em").schedule
    fair = SolverService.solve_rrfs(instance, BALANCED)

    em_report = MetricsService.build_report(instance, em)
    fair_report = MetricsService.build_report(instance, fair.schedule)
    assert fair.objective_value >= SolverService.scalarized_objective(instance, em, BALANCED) - 1e-9
    assert fair_report.participant_unfairness < em_report.participant_unfairness
    assert fair_report.speaker_unfairness <= em_report.speaker_unfairness + 0.15


def test_recsys_repetition_exceeds_single_slot_crowd():
    instance = DatagenService.generate(GeneratorSpec(preset="recsys", seed=7))
    groups = PipelineService.partition_by_priority(instance, 3)
    plan = PipelineService.build_plan(instance, groups, [1, 2, 3, 1], BALANCED, method="rrfs")
    schedule = PipelineService.run_priority_schedule(instance, plan)

    repeated = MetricsService.nec_vector(instance, schedule)[0]
    first_pass = MetricsService.nec_vector(instance, type(schedule)(schedule.rounds[:3]))[0]
    assert all(repeated[t] >= first_pass[t] for t in groups[0])
    assert max(repeated[t] for t in groups[0]) > 1.0

    report = PipelineService.priority_report(instance, schedule, groups, plan.sequence)
    assert report.groups[0].nec_mean > report.groups[1].nec_mean


@pytest.mark.parametrize("preset", ["segregated-availability", "segregated-availability-imbalanced"])
def test_segregated_groups_beat_em_objective(preset):
    instance = DatagenService.generate(GeneratorSpec(preset=preset))
    em = SolverService.solve_em(instance).schedule
    fair = SolverService.solve(instance, "mfairconf", BALANCED)
    assert fair.method == "mfairconf"
    assert fair.objective_value >= SolverService.scalarized_objective(instance, em, BALANCED) - 1e-9
