# fairconf/services/clustering_service.py
import logging
from typing import Optional, Tuple

import numpy as np

from fairconf.core.config import settings
from fairconf.exceptions.datagen_exceptions import InvalidDimsError
from fairconf.models.cluster import ClusterModel
from fairconf.models.instance import SchedulingInstance
from fairconf.models.result import SolveResult
from fairconf.models.schedule import AnySchedule
from fairconf.schemas.objective import ObjectiveSpec
from fairconf.schemas.report import MetricsReport
from fairconf.services.metrics_service import MetricsService
from fairconf.services.solver_service import SolverService

logger = logging.getLogger(__name__)


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)


class ClusteringService:
    """Participant clustering into a weighted reduced instance."""

    @staticmethod
    def build_profiles(instance: SchedulingInstance) -> np.ndarray:
        """Row p is V_p followed by A_p."""
        return np.hstack((instance.interest, instance.availability))

    @staticmethod
    def kmeans(
            profiles: np.ndarray,
            k: int,
            seed: int = 0,
            max_iter: Optional[int] = None
    ) -> ClusterModel:
        """
        Lloyd iterations from a k-means++ start.

        An emptied cluster takes the point of the largest cluster farthest from
        its centroid. Clusters are numbered by their smallest member index.

        Args:
            profiles: m x d matrix
            k: Number of clusters, 1 <= k <= m
            seed: PCG64 seed of the k-means++ draws
            max_iter: Iteration cap; defaults to settings.KMEANS_MAX_ITER

        Returns:
            Fitted ClusterModel with the inertia after every assignment step
        """
        max_iter = settings.KMEANS_MAX_ITER if max_iter is None else max_iter
        points = np.asarray(profiles, dtype=float)
        m = points.shape[0]
        if not 1 <= k <= m:
            raise InvalidDimsError(f"Cluster count k={k} must lie in 1..{m}")

        rng = np.random.Generator(np.random.PCG64(seed))
        chosen = [int(rng.integers(m))]
        for _ in range(1, k):
            nearest = _squared_distances(points, points[chosen]).min(axis=1)
            total = nearest.sum()
            if total > 0:
                chosen.append(int(rng.choice(m, p=nearest / total)))
            else:
                unused = np.setdiff1d(np.arange(m), chosen)
                chosen.append(int(rng.choice(unused)))
        centroids = points[chosen].copy()

        labels = np.full(m, -1)
        history = []
        n_iter = 0
        for n_iter in range(1, max_iter + 1):
            distances = _squared_distances(points, centroids)
            new_labels = distances.argmin(axis=1)
            new_labels = ClusteringService._repair_empty(points, centroids, new_labels, k)
            history.append(float(((points - centroids[new_labels]) ** 2).sum()))

            stable = np.array_equal(new_labels, labels)
            labels = new_labels
            for j in range(k):
                centroids[j] = points[labels == j].mean(axis=0)
            if stable:
                break

        order = np.argsort([np.flatnonzero(labels == j)[0] for j in range(k)], kind="stable")
        relabel = np.empty(k, dtype=np.int64)
        relabel[order] = np.arange(k)
        labels = relabel[labels]
        centroids = centroids[order]
        sizes = np.bincount(labels, minlength=k)

        logger.info(f"k-means: k={k} iterations={n_iter} inertia={history[-1]:.6g}")
        return ClusterModel(
            k=k,
            centroids=centroids,
            labels=labels,
            sizes=sizes,
            inertia_history=tuple(history),
            n_iter=n_iter,
            seed=seed
        )

    @staticmethod
    def _repair_empty(
            points: np.ndarray,
            centroids: np.ndarray,
            labels: np.ndarray,
            k: int
    ) -> np.ndarray:
        labels = labels.copy()
        for j in range(k):
            if np.any(labels == j):
                continue
            largest = int(np.bincount(labels, minlength=k).argmax())
            members = np.flatnonzero(labels == largest)
            spread = ((points[members] - centroids[largest]) ** 2).sum(axis=1)
            moved = members[int(spread.argmax())]
            labels[moved] = j
            centroids[j] = points[moved]
        return labels

    @staticmethod
    def clustered_instance(instance: SchedulingInstance, model: ClusterModel) -> SchedulingInstance:
        """Centroids as participants, weighted by cluster size."""
        n = instance.n
        return instance.with_participants(
            participant_ids=tuple(f"cluster-{j + 1}" for j in range(model.k)),
            interest=model.centroids[:, :n],
            availability=model.centroids[:, n:],
            weights=model.sizes.astype(float)
        )

    @staticmethod
    def evaluate_on_full(instance: SchedulingInstance, schedule: AnySchedule) -> MetricsReport:
        return MetricsService.build_report(instance, schedule)

    @staticmethod
    def solve_clustered(
            instance: SchedulingInstance,
            k: int,
            method: str,
            objective: Optional[ObjectiveSpec] = None,
            seed: int = 0,
            budget: Optional[int] = None,
            fair_solver: str = "rrfs"
    ) -> Tuple[SolveResult, ClusterModel]:
        """
        Solve on the k-cluster reduction; the returned objective value is
        re-evaluated on the full population.
        """
        model = ClusteringService.kmeans(ClusteringService.build_profiles(instance), k, seed)
        reduced = ClusteringService.clustered_instance(instance, model)
        result = SolverService.solve(reduced, method, objective, budget, fair_solver)
        full_value = SolverService.scalarized_objective(instance, result.schedule, result.objective)
        clustered = SolveResult(
            schedule=result.schedule,
            objective_value=full_value,
            method=result.method,
            objective=result.objective,
            diagnostics={**result.diagnostics, "k": k, "reduced_objective": result.objective_value}
        )
        return clustered, model
