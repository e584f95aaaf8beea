# fairconf/schemas/cluster.py
from typing import Dict, List

from pydantic import BaseModel

from fairconf.models.cluster import ClusterModel
from fairconf.models.instance import SchedulingInstance


class ClusterModelSchema(BaseModel):
    """Audit dump of a fitted clustering."""

    k: int
    seed: int
    n_iter: int
    sizes: List[int]
    labels: Dict[str, int]
    centroids: List[List[float]]
    inertia_history: List[float]

    @classmethod
    def from_model(cls, instance: SchedulingInstance, model: ClusterModel) -> "ClusterModelSchema":
        return cls(
            k=model.k,
            seed=model.seed,
            n_iter=model.n_iter,
            sizes=[int(size) for size in model.sizes],
            labels={
                participant: int(label)
                for participant, label in zip(instance.participant_ids, model.labels)
            },
            centroids=model.centroids.tolist(),
            inertia_history=list(model.inertia_history)
        )
