# fairconf/models/cluster.py
from dataclasses import dataclass
from typing import Tuple

import numpy as np


@dataclass(frozen=True, eq=False)
class ClusterModel:
    """
    k-means fit over participant profiles [V_p : A_p].

    Clusters are labelled in order of their smallest member index, so with
    k = m cluster j is participant j.
    """

    k: int
    centroids: np.ndarray
    labels: np.ndarray
    sizes: np.ndarray
    inertia_history: Tuple[float, ...]
    n_iter: int
    seed: int

    @property
    def inertia(self) -> float:
        return self.inertia_history[-1] if self.inertia_history else 0.0
