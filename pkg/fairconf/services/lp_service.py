# fairconf/services/lp_service.py
import logging
from typing import Optional

import numpy as np
from scipy import sparse
from scipy.optimize import linprog

from fairconf.core.config import settings
from fairconf.exceptions.solver_exceptions import (
    DegenerateNormalizationError,
    InfeasibleError,
    NumericalFailureError
)
from fairconf.models.instance import SchedulingInstance
from fairconf.models.lp import LinearProgram, LPSolution
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.services.metrics_service import MetricsService

logger = logging.getLogger(__name__)

STATUS_INFEASIBLE = 2


class LPService:
    """Relaxed joint scheduling program: construction and solution."""

    @staticmethod
    def build_joint_lp(
            instance: SchedulingInstance,
            objective: ObjectiveSpec,
            icg: Optional[np.ndarray] = None,
            iec: Optional[np.ndarray] = None
    ) -> LinearProgram:
        """
        Build the relaxation of the scalarized scheduling program.

        maximize  w_eff / (W n) * sum E[t,s] X[t,s] + l1 (u_lo - u_hi) + l2 (v_lo - v_hi)
        s.t.      sum_s X[t,s] = 1,  sum_t X[t,s] <= 1,
                  u_lo <= NCG_p(X) <= u_hi  for non-degenerate p,
                  v_lo <= NEC_t(X) <= v_hi  for non-degenerate t,
                  0 <= X <= 1.

        Args:
            instance: Instance (or residual sub-instance) to schedule
            objective: Scalarization weights
            icg: Participant normalizers; defaults to the instance's own ICG
            iec: Talk normalizers; defaults to the instance's own IEC

        Returns:
            LinearProgram over n*l + 4 variables

        Raises:
            DegenerateNormalizationError: A zero normalizer on a row with non-zero coefficients
        """
        n, l = instance.n, instance.l
        size = n * l
        icg = MetricsService.ideal_cumulative_gains(instance) if icg is None else np.asarray(icg, dtype=float)
        iec = MetricsService.ideal_expected_crowds(instance) if iec is None else np.asarray(iec, dtype=float)
        crowd = instance.crowd_matrix

        # X[t, s] gain of participant p, flattened to (m, n*l)
        gains = np.einsum("pt,ps->pts", instance.interest, instance.availability).reshape(instance.m, size)
        participants = icg > 0.0
        talks = iec > 0.0
        if np.any(gains[~participants] != 0.0):
            raise DegenerateNormalizationError("Participant with zero ICG has non-zero gains")
        if np.any(crowd[~talks] != 0.0):
            raise DegenerateNormalizationError("Talk with zero IEC has non-zero crowd")

        ncg_rows = gains[participants] / icg[participants, None]
        nec_rows = np.zeros((n, size))
        for t in range(n):
            if talks[t]:
                nec_rows[t, t * l:(t + 1) * l] = crowd[t] / iec[t]
        nec_rows = nec_rows[talks]

        m_scope, n_scope = ncg_rows.shape[0], nec_rows.shape[0]
        u_lo, u_hi, v_lo, v_hi = size, size + 1, size + 2, size + 3

        def aux_column(rows: int, index: int, value: float) -> sparse.csr_matrix:
            column = np.zeros((rows, 4))
            column[:, index - size] = value
            return sparse.csr_matrix(column)

        slot_rows = sparse.hstack([
            sparse.kron(np.ones((1, n)), sparse.identity(l)), sparse.csr_matrix((l, 4))
        ])
        blocks = [slot_rows]
        if m_scope:
            blocks.append(sparse.hstack([-sparse.csr_matrix(ncg_rows), aux_column(m_scope, u_lo, 1.0)]))
            blocks.append(sparse.hstack([sparse.csr_matrix(ncg_rows), aux_column(m_scope, u_hi, -1.0)]))
        if n_scope:
            blocks.append(sparse.hstack([-sparse.csr_matrix(nec_rows), aux_column(n_scope, v_lo, 1.0)]))
            blocks.append(sparse.hstack([sparse.csr_matrix(nec_rows), aux_column(n_scope, v_hi, -1.0)]))
        a_ub = sparse.vstack(blocks).tocsr()
        b_ub = np.concatenate((np.ones(l), np.zeros(2 * m_scope + 2 * n_scope)))

        a_eq = sparse.hstack([
            sparse.kron(sparse.identity(n), np.ones((1, l))), sparse.csr_matrix((n, 4))
        ]).tocsr()
        b_eq = np.ones(n)

        c = np.zeros(size + 4)
        c[:size] = objective.w_eff / (instance.total_weight * n) * crowd.ravel()
        c[u_lo], c[u_hi] = objective.lambda1, -objective.lambda1
        c[v_lo], c[v_hi] = objective.lambda2, -objective.lambda2

        free = (None, None)
        fixed = (0.0, 0.0)
        u_bounds = free if m_scope else fixed
        v_bounds = free if n_scope else fixed
        bounds = ((0.0, 1.0),) * size + (u_bounds, u_bounds, v_bounds, v_bounds)

        participant_rows = tuple(int(p) for p in np.flatnonzero(participants))
        talk_rows = tuple(int(t) for t in np.flatnonzero(talks))
        row_names = (
            tuple(f"slot_{s}" for s in range(l))
            + tuple(f"ncg_lo_{p}" for p in participant_rows)
            + tuple(f"ncg_hi_{p}" for p in participant_rows)
            + tuple(f"nec_lo_{t}" for t in talk_rows)
            + tuple(f"nec_hi_{t}" for t in talk_rows)
            + tuple(f"talk_{t}" for t in range(n))
        )

        logger.debug(
            f"Built joint LP: {size + 4} variables, {a_ub.shape[0]} inequalities, {n} equalities"
        )
        return LinearProgram(
            n_talks=n,
            n_slots=l,
            objective=c,
            a_ub=a_ub,
            b_ub=b_ub,
            a_eq=a_eq,
            b_eq=b_eq,
            bounds=bounds,
            row_names=row_names
        )

    @staticmethod
    def solve_lp(lp: LinearProgram, tolerance: Optional[float] = None) -> LPSolution:
        """
        Solve with the HiGHS dual simplex and certify the result.

        Args:
            lp: Program from build_joint_lp
            tolerance: Primal/dual feasibility tolerance; defaults to settings.LP_TOLERANCE

        Returns:
            LPSolution with X clamped to be non-negative

        Raises:
            InfeasibleError: HiGHS reports infeasibility
            NumericalFailureError: Any other failure, an infeasible X, or a duality gap above tolerance
        """
        tolerance = settings.LP_TOLERANCE if tolerance is None else tolerance
        result = linprog(
            -lp.objective,
            A_ub=lp.a_ub,
            b_ub=lp.b_ub,
            A_eq=lp.a_eq,
            b_eq=lp.b_eq,
            bounds=list(lp.bounds),
            method="highs-ds",
            options={
                "primal_feasibility_tolerance": tolerance,
                "dual_feasibility_tolerance": tolerance
            }
        )
        if result.status == STATUS_INFEASIBLE:
            raise InfeasibleError(f"Linear program is infeasible: {result.message}")
        if result.status != 0 or result.x is None:
            raise NumericalFailureError(f"HiGHS failed with status {result.status}: {result.message}")

        size = lp.n_assignment_vars
        x = result.x[:size].reshape(lp.n_talks, lp.n_slots)
        slack = 10.0 * tolerance
        if np.any(x < -slack):
            raise NumericalFailureError("Assignment variable below zero")
        if np.any(np.abs(x.sum(axis=1) - 1.0) > slack):
            raise NumericalFailureError("Talk row of X does not sum to 1")
        if np.any(x.sum(axis=0) > 1.0 + slack):
            raise NumericalFailureError("Slot column of X exceeds 1")
        x = np.clip(x, 0.0, None)

        gap = LPService._duality_gap(lp, result)
        if gap is not None and gap > settings.LP_CERTIFICATE_TOLERANCE * (1.0 + abs(result.fun)):
            raise NumericalFailureError(f"Duality gap {gap:.3g} exceeds tolerance")

        aux = {name: float(result.x[index]) for name, index in lp.aux_index.items()}
        logger.debug(f"LP solved: objective={-result.fun:.6g} iterations={result.nit}")
        return LPSolution(
            x=x,
            **aux,
            objective_value=float(-result.fun),
            status="optimal",
            iterations=int(result.nit),
            duality_gap=gap
        )

    @staticmethod
    def _duality_gap(lp: LinearProgram, result) -> Optional[float]:
        """
        |primal - dual| where the dual value is the sum of every right-hand side
        and finite bound times its HiGHS marginal. None when marginals are missing.
        """
        try:
            ineq = result.ineqlin.marginals
            eq = result.eqlin.marginals
            lower_marginals = result.lower.marginals
            upper_marginals = result.upper.marginals
        except AttributeError:
            return None
        if ineq is None or eq is None or lower_marginals is None or upper_marginals is None:
            return None

        lower = np.array([-np.inf if low is None else low for low, _ in lp.bounds])
        upper = np.array([np.inf if high is None else high for _, high in lp.bounds])
        dual = float(lp.b_ub @ ineq) + float(lp.b_eq @ eq)
        finite = np.isfinite(lower)
        dual += float(lower[finite] @ np.asarray(lower_marginals)[finite])
        finite = np.isfinite(upper)
        dual += float(upper[finite] @ np.asarray(upper_marginals)[finite])
        return abs(float(result.fun) - dual)
