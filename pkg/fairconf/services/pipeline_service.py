# fairconf/services/pipeline_service.py
import itertools
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from fairconf.core.config import settings
from fairconf.exceptions.pipeline_exceptions import (
    EmptyGridError,
    InvalidPlanError,
    SlotsExhaustedError
)
from fairconf.exceptions.solver_exceptions import SolverException
from fairconf.models.instance import SchedulingInstance
from fairconf.models.result import SolveResult
from fairconf.models.schedule import MultiRoundSchedule, Schedule
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.schemas.plan import PriorityPlan
from fairconf.schemas.report import (
    ComparisonReport,
    PriorityGroupRow,
    PriorityReport,
    ReportRow,
    SweepReport
)
from fairconf.services.clustering_service import ClusteringService
from fairconf.services.metrics_service import MetricsService
from fairconf.services.solver_service import FAIR_SOLVERS, SolverService

logger = logging.getLogger(__name__)

BASELINES: Tuple[Tuple[str, Tuple[float, float, float]], ...] = (
    ("em", (1.0, 0.0, 0.0)),
    ("iam", (1.0, 0.0, 0.0)),
    ("pfair", (0.0, 1.0, 0.0)),
    ("sfair", (0.0, 0.0, 1.0))
)


def _fair_solver(instance: SchedulingInstance, method: str, budget: Optional[int]) -> str:
    """Solver behind pfair/sfair: the sweep's own solver, or exact when it fits the budget."""
    if method in FAIR_SOLVERS:
        return method
    budget = settings.EXACT_BUDGET if budget is None else budget
    return "exact" if math.perm(instance.l, instance.n) <= budget else "rrfs"


def _run_cell(task: dict) -> ReportRow:
    """Solve one (method, weights) cell and score it on the full instance."""
    instance: SchedulingInstance = task["instance"]
    method = task["method"]
    w_eff, lambda1, lambda2 = task["weights"]
    k = task.get("k")
    started = time.perf_counter()
    try:
        objective = ObjectiveSpec(w_eff=w_eff, lambda1=lambda1, lambda2=lambda2)
        if k is not None:
            result, _ = ClusteringService.solve_clustered(
                instance, k, method, objective, task["cluster_seed"], task["budget"], task["fair_solver"]
            )
        else:
            result = SolverService.solve(
                instance, method, objective, task["budget"], task["fair_solver"]
            )
    except SolverException as e:
        logger.warning(f"{method} ({w_eff}, {lambda1}, {lambda2}) failed: {e}")
        return ReportRow(
            method=method, w_eff=w_eff, lambda1=lambda1, lambda2=lambda2, k=k,
            error=f"{e.code}: {e}"
        )
    except ValidationError as e:
        return ReportRow(
            method=method, w_eff=w_eff, lambda1=lambda1, lambda2=lambda2, k=k,
            error=f"InvalidObjective: {e.errors()[0]['msg']}"
        )

    elapsed = (time.perf_counter() - started) * 1000.0
    report = MetricsService.build_report(instance, result.schedule)
    return ReportRow.from_metrics(
        method, w_eff, lambda1, lambda2, report,
        k=k,
        objective_value=result.objective_value,
        runtime_ms=elapsed if task["timings"] else None
    )


class PipelineService:
    """Multi-round priority scheduling, objective sweeps and method comparisons."""

    @staticmethod
    def partition_by_priority(instance: SchedulingInstance, g: int) -> List[List[int]]:
        """
        Split talks, most interesting first, into g contiguous groups; earlier
        groups take the remainder. Ties keep index order.
        """
        if g < 1 or g > instance.n:
            raise InvalidPlanError(f"Cannot split {instance.n} talks into {g} groups")
        order = np.argsort(-(instance.weights @ instance.interest), kind="stable")
        base, extra = divmod(instance.n, g)
        sizes = [base + 1 if index < extra else base for index in range(g)]
        bounds = np.cumsum([0] + sizes)
        return [order[bounds[i]:bounds[i + 1]].tolist() for i in range(g)]

    @staticmethod
    def groups_from_priorities(instance: SchedulingInstance) -> List[List[int]]:
        """Groups from the talks' priority tags, lowest level first."""
        if any(priority is None for priority in instance.talk_priorities):
            raise InvalidPlanError("Every talk needs a priority tag to derive groups")
        levels = sorted(set(instance.talk_priorities))
        return [
            [t for t, priority in enumerate(instance.talk_priorities) if priority == level]
            for level in levels
        ]

    @staticmethod
    def build_plan(
            instance: SchedulingInstance,
            groups: Sequence[Sequence[int]],
            sequence: Sequence[int],
            objective: Optional[ObjectiveSpec] = None,
            method: str = "rrfs"
    ) -> PriorityPlan:
        return PriorityPlan(
            groups=[[instance.talk_ids[t] for t in group] for group in groups],
            sequence=list(sequence),
            objective=objective or ObjectiveSpec.balanced(),
            method=method
        )

    @staticmethod
    def _resolve_groups(instance: SchedulingInstance, plan: PriorityPlan) -> List[List[int]]:
        groups = []
        seen: Dict[str, int] = {}
        for number, group in enumerate(plan.groups, start=1):
            indices = []
            for talk_id in group:
                if talk_id in seen:
                    raise InvalidPlanError(f"Talk {talk_id} is in groups {seen[talk_id]} and {number}")
                seen[talk_id] = number
                try:
                    indices.append(instance.talk_index(talk_id))
                except KeyError:
                    raise InvalidPlanError(f"Plan names unknown talk {talk_id}")
            if not indices:
                raise InvalidPlanError(f"Group {number} is empty")
            groups.append(indices)
        if len(seen) != instance.n:
            raise InvalidPlanError(f"Plan groups cover {len(seen)} of {instance.n} talks")
        return groups

    @staticmethod
    def run_priority_schedule(
            instance: SchedulingInstance,
            plan: PriorityPlan,
            budget: Optional[int] = None,
            fair_solver: str = "rrfs"
    ) -> MultiRoundSchedule:
        """
        Schedule the plan's rounds in order, each over the slots still free.

        A group referenced again gets fresh copies of its talks in the
        remaining slots. Every round normalizes NCG by the ICG of the full
        instance; IEC comes from the round's own slots.

        Raises:
            SlotsExhaustedError: A round has more talks than free slots
        """
        groups = PipelineService._resolve_groups(instance, plan)
        icg = MetricsService.ideal_cumulative_gains(instance)
        free_slots = list(range(instance.l))
        rounds = []
        for index, reference in enumerate(plan.sequence):
            talks = groups[reference - 1]
            if len(talks) > len(free_slots):
                raise SlotsExhaustedError(index + 1, len(talks), len(free_slots))

            sub = instance.restrict(talks, free_slots)
            result = SolverService.solve(
                sub, plan.method, plan.round_objective(index), budget, fair_solver, icg=icg
            )
            pairs = tuple((talks[t], free_slots[s]) for t, s in result.schedule.pairs)
            rounds.append(Schedule(pairs))

            used = {s for _, s in pairs}
            free_slots = [s for s in free_slots if s not in used]
            logger.info(
                f"Round {index + 1} (group {reference}): {len(pairs)} talks, {len(free_slots)} slots left"
            )
        return MultiRoundSchedule(tuple(rounds))

    @staticmethod
    def priority_report(
            instance: SchedulingInstance,
            schedule: MultiRoundSchedule,
            groups: Sequence[Sequence[int]],
            sequence: Sequence[int]
    ) -> PriorityReport:
        """NCG gini and mean over everyone; NEC gini and mean per priority group."""
        metrics = MetricsService.build_report(instance, schedule)
        nec, degenerate = MetricsService.nec_vector(instance, schedule)
        rows = []
        for number, group in enumerate(groups, start=1):
            group = np.asarray(group, dtype=np.int64)
            values = nec[group][~degenerate[group]]
            rows.append(PriorityGroupRow(
                group=number,
                size=len(group),
                nec_gini=_gini_or_zero(values),
                nec_mean=float(values.mean()) if values.size else 1.0
            ))
        return PriorityReport(
            sequence=list(sequence),
            ncg_gini=metrics.ncg_gini,
            ncg_mean=metrics.ncg_mean,
            groups=rows,
            metrics=metrics
        )

    @staticmethod
    def run_sweep(
            instance: SchedulingInstance,
            method: str,
            lambda1_grid: Sequence[float],
            lambda2_grid: Sequence[float],
            w_eff: float = 1.0,
            budget: Optional[int] = None,
            k: Optional[int] = None,
            cluster_seed: int = 0,
            jobs: int = 1,
            timings: bool = False
    ) -> SweepReport:
        """
        One row per (lambda1, lambda2) grid point, lambda1 outermost, followed
        by the EM, IAM, PFair and SFair baselines. Failed cells are kept as
        rows carrying their error.
        """
        if not lambda1_grid:
            raise EmptyGridError("lambda1")
        if not lambda2_grid:
            raise EmptyGridError("lambda2")

        common = dict(
            instance=instance,
            budget=budget,
            k=k,
            cluster_seed=cluster_seed,
            fair_solver=_fair_solver(instance, method, budget),
            timings=timings
        )
        tasks = [
            dict(common, method=method, weights=(w_eff, float(l1), float(l2)))
            for l1, l2 in itertools.product(lambda1_grid, lambda2_grid)
        ]
        tasks += [dict(common, method=name, weights=weights) for name, weights in BASELINES]

        logger.info(f"Sweep {method}: {len(tasks)} cells, jobs={jobs}")
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                rows = list(executor.map(_run_cell, tasks))
        else:
            rows = [_run_cell(task) for task in tasks]

        return SweepReport(
            method=method,
            lambda1_grid=[float(v) for v in lambda1_grid],
            lambda2_grid=[float(v) for v in lambda2_grid],
            w_eff=w_eff,
            rows=rows
        )

    @staticmethod
    def compare_methods(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            budget: Optional[int] = None,
            k: Optional[int] = None,
            cluster_seed: int = 0,
            timings: bool = False
    ) -> ComparisonReport:
        """EM, IAM, PFair, SFair and mFairConf under `objective`, in that order."""
        fair_solver = _fair_solver(instance, "mfairconf", budget)
        rows = []
        cells = list(BASELINES) + [
            ("mfairconf", (objective.w_eff, objective.lambda1, objective.lambda2))
        ]
        for name, (w, l1, l2) in cells:
            started = time.perf_counter()
            cell_objective = ObjectiveSpec(w_eff=w, lambda1=l1, lambda2=l2)
            if k is not None:
                result, _ = ClusteringService.solve_clustered(
                    instance, k, name, cell_objective, cluster_seed, budget, fair_solver
                )
            else:
                result = SolverService.solve(instance, name, cell_objective, budget, fair_solver)
            elapsed = (time.perf_counter() - started) * 1000.0
            rows.append(ReportRow.from_metrics(
                name, w, l1, l2, MetricsService.build_report(instance, result.schedule),
                k=k,
                objective_value=result.objective_value,
                runtime_ms=elapsed if timings else None
            ))
        return ComparisonReport(rows=rows)

    @staticmethod
    def solve_result_row(
            instance: SchedulingInstance,
            result: SolveResult,
            k: Optional[int] = None
    ) -> ReportRow:
        objective = result.objective
        return ReportRow.from_metrics(
            result.method, objective.w_eff, objective.lambda1, objective.lambda2,
            MetricsService.build_report(instance, result.schedule),
            k=k,
            objective_value=result.objective_value
        )


def _gini_or_zero(values: np.ndarray) -> float:
    if values.size == 0 or values.sum() <= 0:
        return 0.0
    return MetricsService.gini(values)
