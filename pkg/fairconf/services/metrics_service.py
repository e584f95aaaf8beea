# fairconf/services/metrics_service.py
import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

import numpy as np

from fairconf.exceptions.metrics_exceptions import (
    AllZeroError,
    DegenerateParticipantError,
    DegenerateTalkError,
    NegativeValuesError
)
from fairconf.models.instance import SchedulingInstance
from fairconf.models.schedule import AnySchedule, MultiRoundSchedule, assignment_pairs
from fairconf.schemas.report import MetricsReport

logger = logging.getLogger(__name__)

MINUTES_PER_HOUR = 60.0


class MetricsService:
    """
    Satisfaction, fairness and efficiency measures of a schedule.

    Vector methods cover every participant or talk at once; the scalar
    methods select one entry. Sums run over every assignment, so a talk
    repeated across rounds accumulates its expected crowd.
    """

    @staticmethod
    def cumulative_gains(instance: SchedulingInstance, schedule: AnySchedule) -> np.ndarray:
        """CG_p = sum over assigned (t, s) of V_p(t) A_p(s), for every participant."""
        talks, slots = assignment_pairs(schedule)
        return (instance.interest[:, talks] * instance.availability[:, slots]).sum(axis=1)

    @staticmethod
    def cumulative_gain(instance: SchedulingInstance, schedule: AnySchedule, p: int) -> float:
        return float(MetricsService.cumulative_gains(instance, schedule)[p])

    @staticmethod
    def ideal_cumulative_gains(instance: SchedulingInstance) -> np.ndarray:
        """
        Best achievable CG per participant: interests sorted descending paired
        with the n largest availabilities sorted descending.
        """
        interest = -np.sort(-instance.interest, axis=1)
        availability = -np.sort(-instance.availability, axis=1)[:, :instance.n]
        return (interest * availability).sum(axis=1)

    @staticmethod
    def ideal_cumulative_gain(instance: SchedulingInstance, p: int) -> float:
        return float(MetricsService.ideal_cumulative_gains(instance)[p])

    @staticmethod
    def ncg_vector(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            icg: Optional[np.ndarray] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """
        NCG of every participant and the mask of degenerate ones (ICG = 0).

        Degenerate participants get NCG 1. `icg` replaces the instance's own
        ideal gains, e.g. those of the full instance when scoring one round.
        """
        gains = MetricsService.cumulative_gains(instance, schedule)
        ideal = MetricsService.ideal_cumulative_gains(instance) if icg is None else np.asarray(icg, dtype=float)
        degenerate = ideal <= 0.0
        values = np.ones_like(gains)
        np.divide(gains, ideal, out=values, where=~degenerate)
        return values, degenerate

    @staticmethod
    def ncg(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            p: int,
            strict: bool = False
    ) -> float:
        """
        Normalized cumulative gain of participant p.

        Raises:
            DegenerateParticipantError: When strict and ICG_p = 0; otherwise 1 is returned
        """
        values, degenerate = MetricsService.ncg_vector(instance, schedule)
        if strict and degenerate[p]:
            raise DegenerateParticipantError(p)
        return float(values[p])

    @staticmethod
    def expected_crowds(instance: SchedulingInstance, schedule: AnySchedule) -> np.ndarray:
        """EC per talk, summed over every slot the talk occupies."""
        talks, slots = assignment_pairs(schedule)
        crowd = instance.crowd_matrix[talks, slots]
        return np.bincount(talks, weights=crowd, minlength=instance.n).astype(float)

    @staticmethod
    def expected_crowd(instance: SchedulingInstance, schedule: AnySchedule, t: int) -> float:
        return float(MetricsService.expected_crowds(instance, schedule)[t])

    @staticmethod
    def ideal_expected_crowds(instance: SchedulingInstance) -> np.ndarray:
        """IEC_t = max over slots of E[t, s]."""
        if instance.l == 0:
            return np.zeros(instance.n)
        return instance.crowd_matrix.max(axis=1)

    @staticmethod
    def ideal_expected_crowd(instance: SchedulingInstance, t: int) -> float:
        return float(MetricsService.ideal_expected_crowds(instance)[t])

    @staticmethod
    def nec_vector(
            instance: SchedulingInstance,
            schedule: AnySchedule
    ) -> Tuple[np.ndarray, np.ndarray]:
        """NEC of every talk (single-slot IEC denominator) and the mask of degenerate talks."""
        crowds = MetricsService.expected_crowds(instance, schedule)
        ideal = MetricsService.ideal_expected_crowds(instance)
        degenerate = ideal <= 0.0
        values = np.ones_like(crowds)
        np.divide(crowds, ideal, out=values, where=~degenerate)
        return values, degenerate

    @staticmethod
    def nec(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            t: int,
            strict: bool = False
    ) -> float:
        """
        Normalized expected crowd of talk t.

        Raises:
            DegenerateTalkError: When strict and IEC_t = 0; otherwise 1 is returned
        """
        values, degenerate = MetricsService.nec_vector(instance, schedule)
        if strict and degenerate[t]:
            raise DegenerateTalkError(t)
        return float(values[t])

    @staticmethod
    def tep(instance: SchedulingInstance, schedule: AnySchedule) -> float:
        """Total expected participation, sum of E[t, s] over every assignment."""
        talks, slots = assignment_pairs(schedule)
        return float(instance.crowd_matrix[talks, slots].sum())

    @staticmethod
    def gap(values: np.ndarray, degenerate: np.ndarray) -> float:
        """max - min over non-degenerate entries; 0 when fewer than two remain."""
        kept = values[~degenerate]
        if kept.size < 2:
            return 0.0
        return float(kept.max() - kept.min())

    @staticmethod
    def participant_unfairness(
            instance: SchedulingInstance,
            schedule: AnySchedule,
            icg: Optional[np.ndarray] = None
    ) -> float:
        return MetricsService.gap(*MetricsService.ncg_vector(instance, schedule, icg))

    @staticmethod
    def speaker_unfairness(instance: SchedulingInstance, schedule: AnySchedule) -> float:
        return MetricsService.gap(*MetricsService.nec_vector(instance, schedule))

    @staticmethod
    def gini(values) -> float:
        """
        Gini index, sum_i sum_j |x_i - x_j| / (2 k^2 mean).

        Raises:
            NegativeValuesError: If any value is negative
            AllZeroError: If the values sum to zero
        """
        x = np.sort(np.asarray(values, dtype=float).ravel())
        if np.any(x < 0.0):
            raise NegativeValuesError()
        total = x.sum()
        if x.size == 0 or total <= 0.0:
            raise AllZeroError()
        k = x.size
        ranks = np.arange(1, k + 1)
        return float(((2 * ranks - k - 1) * x).sum() / (k * total))

    @staticmethod
    def contiguity_histogram(instance: SchedulingInstance, schedule: AnySchedule) -> Dict[int, int]:
        """Run length -> count, over maximal runs of consecutive occupied slot indices."""
        _, slots = assignment_pairs(schedule)
        occupied = np.unique(slots)
        if occupied.size == 0:
            return {}
        breaks = np.flatnonzero(np.diff(occupied) != 1)
        edges = np.concatenate(([0], breaks + 1, [occupied.size]))
        runs = Counter(int(length) for length in np.diff(edges))
        return dict(sorted(runs.items()))

    @staticmethod
    def repetition_gaps(instance: SchedulingInstance, schedule: AnySchedule) -> Dict[int, List[float]]:
        """Hours between consecutive start times of each scheduled talk's slots."""
        if not isinstance(schedule, MultiRoundSchedule):
            schedule = MultiRoundSchedule.single(schedule)
        gaps = {}
        for talk, slots in sorted(schedule.slots_by_talk().items()):
            starts = np.sort(instance.slot_starts[list(slots)])
            gaps[talk] = [float(g) / MINUTES_PER_HOUR for g in np.diff(starts)]
        return gaps

    @staticmethod
    def build_report(instance: SchedulingInstance, schedule: AnySchedule) -> MetricsReport:
        """
        Full metrics of a schedule.

        Degenerate participants and talks keep their conventional value 1 in
        the vectors but are left out of gaps, means and gini indices.
        """
        ncg, ncg_degenerate = MetricsService.ncg_vector(instance, schedule)
        nec, nec_degenerate = MetricsService.nec_vector(instance, schedule)

        if ncg_degenerate.any() or nec_degenerate.any():
            logger.info(
                f"Degenerate entries excluded from aggregates: "
                f"{int(ncg_degenerate.sum())} participant(s), {int(nec_degenerate.sum())} talk(s)"
            )

        return MetricsReport(
            ncg=ncg.tolist(),
            nec=nec.tolist(),
            tep=MetricsService.tep(instance, schedule),
            participant_unfairness=MetricsService.gap(ncg, ncg_degenerate),
            speaker_unfairness=MetricsService.gap(nec, nec_degenerate),
            ncg_gini=_safe_gini(ncg[~ncg_degenerate]),
            nec_gini=_safe_gini(nec[~nec_degenerate]),
            ncg_mean=_safe_mean(ncg[~ncg_degenerate]),
            nec_mean=_safe_mean(nec[~nec_degenerate]),
            contiguity=MetricsService.contiguity_histogram(instance, schedule),
            repetition_gaps={
                instance.talk_ids[t]: gaps
                for t, gaps in MetricsService.repetition_gaps(instance, schedule).items()
            },
            degenerate_participants=[
                instance.participant_ids[p] for p in np.flatnonzero(ncg_degenerate)
            ],
            degenerate_talks=[instance.talk_ids[t] for t in np.flatnonzero(nec_degenerate)]
        )


def _safe_gini(values: np.ndarray) -> float:
    # all-zero (or empty) vectors are perfectly equal
    try:
        return MetricsService.gini(values)
    except AllZeroError:
        return 0.0


def _safe_mean(values: np.ndarray) -> float:
    return float(values.mean()) if values.size else 1.0
