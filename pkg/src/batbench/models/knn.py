"""K-nearest-neighbors regression (euclidean, uniform weights).

Distance ties break toward the lower training-row index. The neighbor mean
uses ``math.fsum`` so the result is the correctly rounded mean regardless of
summation order.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import KTooLargeError
from .config import KNNConfig
from .tree import _validate_query


class KNNModel:
    family = "KNN"

    def __init__(self, k: int, train_X: np.ndarray, train_y: np.ndarray):
        self.k = k
        self.train_X = np.array(train_X, dtype=np.float64)
        self.train_y = np.array(train_y, dtype=np.float64)
        self.train_X.setflags(write=False)
        self.train_y.setflags(write=False)
        self.n_features_in = self.train_X.shape[1]
        self.training_target_mean = float(np.mean(self.train_y))

    def predict(self, X) -> np.ndarray:
        X = _validate_query(X, self.n_features_in)
        if len(X) == 0:
            return np.empty(0, dtype=np.float64)
        # squared distances via ||a-b||^2 expansion, one row per query
        sq_train = np.einsum("ij,ij->i", self.train_X, self.train_X)
        sq_query = np.einsum("ij,ij->i", X, X)
        d2 = sq_query[:, None] + sq_train[None, :] - 2.0 * (X @ self.train_X.T)
        out = np.empty(len(X), dtype=np.float64)
        for i in range(len(X)):
            nearest = np.argsort(d2[i], kind="stable")[: self.k]
            out[i] = math.fsum(self.train_y[nearest]) / self.k
        return out

    def to_state(self) -> dict:
        return {
            "k": self.k,
            "train_X": self.train_X.tolist(),
            "train_y": self.train_y.tolist(),
        }

    @classmethod
    def from_state(cls, state: dict) -> "KNNModel":
        return cls(state["k"], np.array(state["train_X"]), np.array(state["train_y"]))


def fit_knn(config: KNNConfig, X, y) -> KNNModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if config.k > len(X):
        raise KTooLargeError(f"k={config.k} exceeds {len(X)} training rows")
    return KNNModel(config.k, X, y)
