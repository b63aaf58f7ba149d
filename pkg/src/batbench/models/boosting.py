"""Squared-loss gradient boosting over CART trees.

The model starts from the training-target mean and adds learning_rate times
each stage tree, every stage fitted to the current residuals.
"""

from __future__ import annotations

import numpy as np

from ..errors import EmptyTrainingSetError
from .config import GradientBoostingConfig
from .tree import TreeModel, _validate_query, grow_tree


class BoostingModel:
    family = "GradientBoosting"

    def __init__(self, base_prediction: float, learning_rate: float,
                 stages: list[TreeModel], n_features_in: int):
        self.base_prediction = base_prediction
        self.learning_rate = learning_rate
        self.stages = tuple(stages)
        self.n_features_in = n_features_in
        self.training_target_mean = base_prediction

    def predict(self, X) -> np.ndarray:
        X = _validate_query(X, self.n_features_in)
        preds = np.full(len(X), self.base_prediction, dtype=np.float64)
        for stage in self.stages:
            preds += self.learning_rate * stage.predict(X)
        return preds

    def staged_predict(self, X):
        """Yield predictions after 0, 1, ..., n_estimators stages."""
        X = _validate_query(X, self.n_features_in)
        preds = np.full(len(X), self.base_prediction, dtype=np.float64)
        yield preds.copy()
        for stage in self.stages:
            preds += self.learning_rate * stage.predict(X)
            yield preds.copy()

    def impurity_contributions(self) -> np.ndarray:
        out = np.zeros(self.n_features_in, dtype=np.float64)
        for stage in self.stages:
            out += stage.impurity_contributions()
        return out

    def to_state(self) -> dict:
        return {
            "base_prediction": self.base_prediction,
            "learning_rate": self.learning_rate,
            "stages": [s.to_state() for s in self.stages],
            "n_features_in": self.n_features_in,
        }

    @classmethod
    def from_state(cls, state: dict) -> "BoostingModel":
        return cls(
            state["base_prediction"],
            state["learning_rate"],
            [TreeModel.from_state(s) for s in state["stages"]],
            state["n_features_in"],
        )


def fit_gradient_boosting(config: GradientBoostingConfig, X, y) -> BoostingModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if len(X) == 0:
        raise EmptyTrainingSetError("cannot fit boosting on zero rows")
    base = float(np.mean(y))
    current = np.full(len(y), base, dtype=np.float64)
    stages = []
    for _ in range(config.n_estimators):
        residuals = y - current
        stage = grow_tree(X, residuals, config.max_depth, config.min_samples_leaf)
        current += config.learning_rate * stage.predict(X)
        stages.append(stage)
    return BoostingModel(base, config.learning_rate, stages, X.shape[1])
