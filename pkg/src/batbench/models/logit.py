"""Logistic-function regressor adapted for continuous targets.

Targets are min-max scaled into [clamp, 1 - clamp], logit-transformed, and
fit with ridge-penalized least squares (bias unpenalized). Predictions invert
the transform and are clipped to the training target range.
"""

from __future__ import annotations

import numpy as np

from ..errors import EmptyTrainingSetError
from .config import LogitAdaptedConfig
from .kernel import cholesky_solve
from .tree import _validate_query


class LogitModel:
    family = "LogitAdapted"

    def __init__(self, weights: np.ndarray, bias: float, y_min: float,
                 y_max: float, clamp: float, constant_target: bool,
                 training_target_mean: float):
        self.weights = np.array(weights, dtype=np.float64)
        self.weights.setflags(write=False)
        self.bias = bias
        self.y_min = y_min
        self.y_max = y_max
        self.clamp = clamp
        self.constant_target = constant_target
        self.n_features_in = len(self.weights)
        self.training_target_mean = training_target_mean

    def predict(self, X) -> np.ndarray:
        X = _validate_query(X, self.n_features_in)
        if len(X) == 0:
            return np.empty(0, dtype=np.float64)
        if self.constant_target:
            return np.full(len(X), self.y_min, dtype=np.float64)
        z = np.sum(X * self.weights, axis=1) + self.bias
        p = 1.0 / (1.0 + np.exp(-z))
        span = self.y_max - self.y_min
        raw = self.y_min + (p - self.clamp) * span / (1.0 - 2.0 * self.clamp)
        return np.clip(raw, self.y_min, self.y_max)

    def to_state(self) -> dict:
        return {
            "weights": self.weights.tolist(),
            "bias": self.bias,
            "y_min": self.y_min,
            "y_max": self.y_max,
            "clamp": self.clamp,
            "constant_target": self.constant_target,
            "training_target_mean": self.training_target_mean,
        }

    @classmethod
    def from_state(cls, state: dict) -> "LogitModel":
        return cls(np.array(state["weights"]), state["bias"], state["y_min"],
                   state["y_max"], state["clamp"], state["constant_target"],
                   state["training_target_mean"])


def fit_logit_adapted(config: LogitAdaptedConfig, X, y) -> LogitModel:
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n, d = X.shape if X.ndim == 2 else (len(X), 0)
    if n == 0:
        raise EmptyTrainingSetError("cannot fit on zero rows")
    y_min, y_max = float(np.min(y)), float(np.max(y))
    if y_min == y_max:
        return LogitModel(np.zeros(d), 0.0, y_min, y_max, config.clamp,
                          constant_target=True, training_target_mean=y_min)

    delta = config.clamp
    scaled = delta + (1.0 - 2.0 * delta) * (y - y_min) / (y_max - y_min)
    z = np.log(scaled / (1.0 - scaled))

    # ridge normal equations with an unpenalized bias column
    A = np.empty((d + 1, d + 1), dtype=np.float64)
    A[:d, :d] = X.T @ X + config.alpha * np.eye(d)
    col_sums = X.sum(axis=0)
    A[:d, d] = col_sums
    A[d, :d] = col_sums
    A[d, d] = n
    rhs = np.concatenate([X.T @ z, [z.sum()]])
    solution = cholesky_solve(A, rhs)
    return LogitModel(solution[:d], float(solution[d]), y_min, y_max, delta,
                      constant_target=False, training_target_mean=float(np.mean(y)))
