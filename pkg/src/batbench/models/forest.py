"""Bagged CART ensemble with per-split feature subsampling."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyTrainingSetError
from ..rng import derive_seed
from .config import RandomForestConfig
from .tree import TreeModel, _validate_query, grow_tree


class ForestModel:
    family = "RandomForest"

    def __init__(self, trees: list[TreeModel], n_features_in: int,
                 training_target_mean: float):
        self.trees = tuple(trees)
        self.n_features_in = n_features_in
        self.training_target_mean = training_target_mean

    def predict(self, X) -> np.ndarray:
        X = _validate_query(X, self.n_features_in)
        if len(X) == 0:
            return np.empty(0, dtype=np.float64)
        stacked = np.vstack([t.predict(X) for t in self.trees])
        return np.mean(stacked, axis=0)

    def impurity_contributions(self) -> np.ndarray:
        out = np.zeros(self.n_features_in, dtype=np.float64)
        for t in self.trees:
            out += t.impurity_contributions()
        return out

    def to_state(self) -> dict:
        return {
            "trees": [t.to_state() for t in self.trees],
            "n_features_in": self.n_features_in,
            "training_target_mean": self.training_target_mean,
        }

    @classmethod
    def from_state(cls, state: dict) -> "ForestModel":
        return cls(
            [TreeModel.from_state(s) for s in state["trees"]],
            state["n_features_in"],
            state["training_target_mean"],
        )


def fit_random_forest(config: RandomForestConfig, X, y) -> ForestModel:
    """Fit n_trees CARTs on bootstrap resamples; prediction is their mean.

    Each tree draws its own rng stream from the config seed, so results do
    not depend on fit scheduling.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = len(X)
    if n == 0:
        raise EmptyTrainingSetError("cannot fit a forest on zero rows")
    max_features = min(config.max_features, X.shape[1])
    trees = []
    for i in range(config.n_trees):
        rng = np.random.default_rng(derive_seed(config.seed, "tree", i))
        if config.bootstrap:
            rows = rng.integers(0, n, size=n)
        else:
            rows = np.arange(n)
        trees.append(grow_tree(
            X[rows], y[rows], config.max_depth, config.min_samples_leaf,
            rng=rng, max_features=max_features,
        ))
    return ForestModel(trees, X.shape[1], float(np.mean(y)))
