# fairconf/services/solver_service.py
import itertools
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from fairconf.core.config import settings
from fairconf.exceptions.solver_exceptions import (
    BudgetExceededError,
    NumericalFailureError,
    UnknownMethodError
)
from fairconf.models.instance import SchedulingInstance
from fairconf.models.result import SolveResult
from fairconf.models.schedule import AnySchedule, Schedule
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.lp_service import LPService
from fairconf.services.metrics_service import MetricsService

logger = logging.getLogger(__name__)

METHODS = ("em", "iam", "pfair", "sfair", "mfairconf", "exact", "rrfs")
FAIR_SOLVERS = ("exact", "rrfs")


class SolverService:
    """Schedules under every supported method."""

    @staticmethod
    def scalarized_objective(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None
    ) -> float:
        """
        w_eff TEP / (W n) + l1 (min NCG - max NCG) + l2 (min NEC - max NEC).

        `icg` overrides the NCG normalizers (see MetricsService.ncg_vector).
        """
        value = objective.w_eff * MetricsService.tep(instance, schedule) / (instance.total_weight * instance.n)
        if objective.lambda1:
            value -= objective.lambda1 * MetricsService.participant_unfairness(instance, schedule, icg)
        if objective.lambda2:
            value -= objective.lambda2 * MetricsService.speaker_unfairness(instance, schedule)
        return float(value)

    @staticmethod
    def _result(
            instance: SchedulingInstance,
            schedule: Schedule,
            method: str,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None,
            **diagnostics
    ) -> SolveResult:
        value = SolverService.scalarized_objective(instance, schedule, objective, icg)
        logger.info(f"{method}: n={instance.n} l={instance.l} objective={value:.6g}")
        return SolveResult(
            schedule=schedule,
            objective_value=value,
            method=method,
            objective=objective,
            diagnostics=diagnostics
        )

    @staticmethod
    def _em_slots(instance: SchedulingInstance) -> np.ndarray:
        n, l = instance.n, instance.l
        total = instance.total_weight
        cost = np.full((l, l), total)
        cost[:n] = total - instance.crowd_matrix
        rows, columns = linear_sum_assignment(cost)
        return columns[np.argsort(rows)][:n]

    @staticmethod
    def solve_em(instance: SchedulingInstance) -> SolveResult:
        """
        TEP-maximizing schedule as a min-cost assignment.

        Cost of talk t in slot s is W - E[t, s]; l - n dummy talks cost W in
        every slot so the l x l matrix is square.
        """
        schedule = Schedule.from_array(SolverService._em_slots(instance))
        return SolverService._result(instance, schedule, "em", ObjectiveSpec.efficiency())

    @staticmethod
    def solve_iam(instance: SchedulingInstance) -> SolveResult:
        """k-th most interesting talk goes to the k-th most available slot; ties by index."""
        interest = instance.weights @ instance.interest
        availability = instance.weights @ instance.availability
        talk_order = np.argsort(-interest, kind="stable")
        slot_order = np.argsort(-availability, kind="stable")[:instance.n]
        schedule = Schedule(tuple(zip(talk_order.tolist(), slot_order.tolist())))
        return SolverService._result(instance, schedule, "iam", ObjectiveSpec.efficiency())

    @staticmethod
    def solve_exact(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            budget: Optional[int] = None,
            method: str = "exact",
            icg: Optional[np.ndarray] = None
    ) -> SolveResult:
        """
        Maximize the scalarized objective over every injective assignment.

        Assignment vectors are enumerated in lexicographic order, in blocks:
        every prefix of the first d talks is completed by the same template of
        permutations mapped onto the prefix's free slots. The first vector
        within EXACT_TIE_TOL of the maximum wins.

        Args:
            instance: Validated instance
            objective: Scalarization weights
            budget: Maximum number of assignments to enumerate
            method: Tag of the returned result
            icg: NCG normalizers to use instead of the instance's own

        Raises:
            BudgetExceededError: l! / (l - n)! exceeds the budget
        """
        budget = settings.EXACT_BUDGET if budget is None else budget
        n, l, m = instance.n, instance.l, instance.m
        required = math.perm(l, n)
        if required > budget:
            raise BudgetExceededError(required, budget)

        tolerance = settings.EXACT_TIE_TOL
        block_rows = max(1, settings.EXACT_BLOCK_ROWS // max(m, 1))
        depth = 0
        while depth < n and math.perm(l - depth, n - depth) > block_rows:
            depth += 1
        completions = list(itertools.permutations(range(l - depth), n - depth))
        template = np.array(completions, dtype=np.int64).reshape(len(completions), n - depth)

        evaluate = _BlockEvaluator(instance, objective, icg)
        best_value = -np.inf
        best = None
        for prefix in itertools.permutations(range(l), depth):
            free = np.setdiff1d(np.arange(l), prefix)
            block = np.empty((template.shape[0], n), dtype=np.int64)
            if depth:
                block[:, :depth] = prefix
            block[:, depth:] = free[template]

            values = evaluate(block)
            block_best = values.max()
            if block_best > best_value + tolerance:
                best_value = block_best
                best = block[int(np.argmax(values >= block_best - tolerance))].copy()

        schedule = Schedule.from_array(best)
        return SolverService._result(instance, schedule, method, objective, icg, enumerated=required)

    @staticmethod
    def solve_rrfs(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            method: str = "rrfs",
            icg: Optional[np.ndarray] = None
    ) -> SolveResult:
        """
        Repeated rounding of fractional solutions, then local improvement.

        Each outer iteration solves the relaxation on the unscheduled talks and
        unused slots (ICG of the full instance, IEC of the remaining slots),
        then repeatedly fixes the largest entry of X, lowest talk and then
        lowest slot on ties, clearing its row and column until X is zero. The
        last remaining talk is placed in whichever free slot maximizes the
        full-instance objective.

        The rounded schedule and the EM schedule then each seed a move/swap
        search on the full-instance objective (at most RRFS_LOCAL_SEARCH_PASSES
        passes; 0 turns the search off). The better local optimum is returned,
        so the result is never worse than the rounded schedule.

        Args:
            instance: Validated instance
            objective: Scalarization weights
            method: Tag of the returned result
            icg: NCG normalizers to use instead of the instance's own

        Raises:
            InfeasibleLPError: A relaxation has no solution
            NumericalFailureError: The solver or the rounding misbehaved
        """
        zero_tol = settings.RRFS_ZERO_TOL
        tie_tol = settings.RRFS_TIE_TOL
        icg = MetricsService.ideal_cumulative_gains(instance) if icg is None else np.asarray(icg, dtype=float)
        remaining_talks = list(range(instance.n))
        remaining_slots = list(range(instance.l))
        assignment = {}
        iterations = 0
        lp_iterations = 0

        while remaining_talks:
            iterations += 1
            if len(remaining_talks) == 1:
                talk = remaining_talks.pop()
                assignment[talk] = SolverService._best_last_slot(
                    instance, objective, assignment, talk, remaining_slots, icg
                )
                break

            residual = instance.restrict(remaining_talks, remaining_slots)
            solution = LPService.solve_lp(LPService.build_joint_lp(residual, objective, icg=icg))
            lp_iterations += solution.iterations

            x = solution.x.copy()
            x[x < zero_tol] = 0.0
            placed = []
            while np.any(x > 0.0):
                peak = x.max()
                row, column = np.argwhere(x >= peak - tie_tol)[0]
                placed.append((int(row), int(column)))
                x[row, :] = 0.0
                x[:, column] = 0.0
            if not placed:
                raise NumericalFailureError("Fractional solution rounds to an empty assignment")

            logger.debug(f"rrfs iteration {iterations}: rounded {len(placed)} talk(s)")
            for row, column in placed:
                assignment[remaining_talks[row]] = remaining_slots[column]
            taken_talks = {remaining_talks[row] for row, _ in placed}
            taken_slots = {remaining_slots[column] for _, column in placed}
            remaining_talks = [t for t in remaining_talks if t not in taken_talks]
            remaining_slots = [s for s in remaining_slots if s not in taken_slots]

        rounded = Schedule.from_mapping(assignment)
        rounded_value = SolverService.scalarized_objective(instance, rounded, objective, icg)
        schedule, moves = SolverService._improve(instance, objective, rounded, icg)

        return SolverService._result(
            instance,
            schedule,
            method,
            objective,
            icg,
            iterations=iterations,
            lp_iterations=lp_iterations,
            rounded_objective=rounded_value,
            local_search_moves=moves
        )

    @staticmethod
    def _improve(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            rounded: Schedule,
            icg: np.ndarray
    ) -> Tuple[Schedule, int]:
        passes = settings.RRFS_LOCAL_SEARCH_PASSES
        if passes <= 0:
            return rounded, 0

        search = _LocalSearch(instance, objective, icg)
        slots, value, moves = search.improve(rounded.to_array(), passes)
        em_slots, em_value, em_moves = search.improve(SolverService._em_slots(instance), passes)
        # ties keep the rounded seed
        if em_value > value + settings.RRFS_TIE_TOL:
            slots, value, moves = em_slots, em_value, em_moves
        logger.debug(f"rrfs local search: {moves} move(s), objective {value:.6g}")
        return Schedule.from_array(slots), moves

    @staticmethod
    def _best_last_slot(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            assignment: dict,
            talk: int,
            slots: list,
            icg: Optional[np.ndarray] = None
    ) -> int:
        best_slot, best_value = slots[0], -np.inf
        for slot in slots:
            value = SolverService.scalarized_objective(
                instance, Schedule.from_mapping({**assignment, talk: slot}), objective, icg
            )
            if value > best_value + settings.RRFS_TIE_TOL:
                best_slot, best_value = slot, value
        return best_slot

    @staticmethod
    def solve(
            instance: SchedulingInstance,
            method: str,
            objective: Optional[ObjectiveSpec] = None,
            budget: Optional[int] = None,
            fair_solver: str = "rrfs",
            icg: Optional[np.ndarray] = None
    ) -> SolveResult:
        """
        Dispatch on a method name.

        Args:
            instance: Validated instance
            method: em, iam, pfair, sfair, mfairconf, exact or rrfs
            objective: Weights for mfairconf, exact and rrfs
            budget: Enumeration budget of the exact solver
            fair_solver: Solver behind pfair and sfair ("rrfs" or "exact")
            icg: NCG normalizers for the fair methods, e.g. those of the full
                instance when `instance` is one round of a priority schedule

        Returns:
            SolveResult tagged with `method`
        """
        if method == "em":
            return SolverService.solve_em(instance)
        if method == "iam":
            return SolverService.solve_iam(instance)
        if method in ("pfair", "sfair"):
            if fair_solver not in FAIR_SOLVERS:
                raise UnknownMethodError(fair_solver)
            weights = ObjectiveSpec.participant_fair() if method == "pfair" else ObjectiveSpec.speaker_fair()
            if fair_solver == "exact":
                return SolverService.solve_exact(instance, weights, budget, method=method, icg=icg)
            return SolverService.solve_rrfs(instance, weights, method=method, icg=icg)

        if method not in ("mfairconf", "exact", "rrfs"):
            raise UnknownMethodError(method)
        objective = objective or ObjectiveSpec.efficiency()
        if method == "exact":
            return SolverService.solve_exact(instance, objective, budget, icg=icg)
        if method == "rrfs":
            return SolverService.solve_rrfs(instance, objective, icg=icg)

        budget = settings.EXACT_BUDGET if budget is None else budget
        if math.perm(instance.l, instance.n) <= budget:
            return SolverService.solve_exact(instance, objective, budget, method=method, icg=icg)
        return SolverService.solve_rrfs(instance, objective, method=method, icg=icg)


class _Scorer:
    """Scalarized objective from per-participant gains and per-talk crowds."""

    def __init__(
            self,
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None
    ):
        self.objective = objective
        self.crowd = instance.crowd_matrix
        self.efficiency = objective.w_eff / (instance.total_weight * instance.n)
        if icg is None:
            icg = MetricsService.ideal_cumulative_gains(instance)
        icg = np.asarray(icg, dtype=float)
        iec = MetricsService.ideal_expected_crowds(instance)
        self.participants = np.flatnonzero(icg > 0.0)
        self.icg = icg[self.participants]
        self.talks = np.flatnonzero(iec > 0.0)
        self.iec = iec[self.talks]
        self.talk_index = np.arange(instance.n)

    def score(self, gains: np.ndarray, crowds: np.ndarray) -> np.ndarray:
        """
        Args:
            gains: CG of the non-degenerate participants, one column per candidate
            crowds: EC of every talk, one row per candidate

        Returns:
            Objective value of each candidate
        """
        values = self.efficiency * crowds.sum(axis=1)
        if self.objective.lambda1 and self.participants.size > 1:
            ncg = gains / self.icg[:, None]
            values = values - self.objective.lambda1 * (ncg.max(axis=0) - ncg.min(axis=0))
        if self.objective.lambda2 and self.talks.size > 1:
            nec = crowds[:, self.talks] / self.iec[None, :]
            values = values - self.objective.lambda2 * (nec.max(axis=1) - nec.min(axis=1))
        return values


class _BlockEvaluator(_Scorer):
    """Scalarized objective of many assignment vectors at once."""

    def __init__(
            self,
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None
    ):
        super().__init__(instance, objective, icg)
        # gains[p, t, s] = V_p(t) A_p(s) for non-degenerate participants
        self.gains = (
            instance.interest[self.participants, :, None]
            * instance.availability[self.participants, None, :]
        )

    def __call__(self, block: np.ndarray) -> np.ndarray:
        crowds = self.crowd[self.talk_index, block]
        gains = np.zeros((self.participants.size, block.shape[0]))
        if self.objective.lambda1 and self.participants.size > 1:
            for t in self.talk_index:
                gains += self.gains[:, t, block[:, t]]
        return self.score(gains, crowds)


class _LocalSearch(_Scorer):
    """
    First-improvement search over single-talk moves and pairwise swaps.

    A pass visits the talks in index order. For talk t every other slot is a
    candidate: a free slot moves t there, an occupied one swaps t with its
    owner. The best candidate is taken when it beats the current value by
    more than RRFS_TIE_TOL. Passes repeat until one changes nothing.
    """

    def __init__(
            self,
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None
    ):
        super().__init__(instance, objective, icg)
        self.interest = instance.interest[self.participants]
        self.availability = instance.availability[self.participants]
        self.l = instance.l

    def _state(self, slots: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        gains = (self.interest * self.availability[:, slots]).sum(axis=1)
        crowds = self.crowd[self.talk_index, slots].astype(float)
        return gains, crowds

    def value(self, slots: np.ndarray) -> float:
        gains, crowds = self._state(np.asarray(slots, dtype=np.int64))
        return float(self.score(gains[:, None], crowds[None, :])[0])

    def improve(self, slots: np.ndarray, max_passes: int) -> Tuple[np.ndarray, float, int]:
        """
        Returns:
            Improved slot-per-talk vector, its objective value and the number of accepted moves
        """
        slots = np.array(slots, dtype=np.int64)
        owner = np.full(self.l, -1, dtype=np.int64)
        owner[slots] = self.talk_index
        gains, crowds = self._state(slots)
        current = self.value(slots)
        moves = 0

        for _ in range(max_passes):
            improved = False
            for t in self.talk_index:
                here = slots[t]
                targets = np.flatnonzero(np.arange(self.l) != here)
                if targets.size == 0:
                    continue
                partner = owner[targets]
                swapped = partner >= 0
                partner_safe = np.where(swapped, partner, 0)

                # t moves here -> target; a swapped partner moves target -> here
                shift = self.availability[:, targets] - self.availability[:, [here]]
                candidate_gains = gains[:, None] + self.interest[:, [t]] * shift
                candidate_gains -= np.where(swapped[None, :], self.interest[:, partner_safe] * shift, 0.0)

                candidate_crowds = np.repeat(crowds[None, :], targets.size, axis=0)
                candidate_crowds[:, t] = self.crowd[t, targets]
                rows = np.flatnonzero(swapped)
                candidate_crowds[rows, partner[rows]] = self.crowd[partner[rows], here]

                values = self.score(candidate_gains, candidate_crowds)
                best = int(np.argmax(values))
                if values[best] <= current + settings.RRFS_TIE_TOL:
                    continue

                target = int(targets[best])
                other = int(owner[target])
                slots[t] = target
                owner[target] = t
                owner[here] = other
                if other >= 0:
                    slots[other] = here
                gains, crowds = self._state(slots)
                current = self.value(slots)
                moves += 1
                improved = True
            if not improved:
                break
        return slots, current, moves
