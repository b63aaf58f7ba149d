"""Kernels, an SPD Cholesky solver, and kernel ridge regression."""

from __future__ import annotations

import numpy as np

from ..errors import EmptyTrainingSetError, SingularSystemError
from .config import KernelRidgeConfig
from .tree import _validate_query


def kernel_matrix(kind: str, gamma: float, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Pairwise kernel values k(a_i, b_j) for rows of A and B."""
    if kind == "linear":
        return A @ B.T
    if kind == "rbf":
        sq_a = np.einsum("ij,ij->i", A, A)
        sq_b = np.einsum("ij,ij->i", B, B)
        d2 = sq_a[:, None] + sq_b[None, :] - 2.0 * (A @ B.T)
        np.clip(d2, 0.0, None, out=d2)
        return np.exp(-gamma * d2)
    raise ValueError(f"unknown kernel {kind!r}")


def cholesky_solve(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A x = b for symmetric positive definite A via L L^T factorization."""
    A = np.asarray(A, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = len(A)
    L = np.zeros((n, n), dtype=np.float64)
    for j in range(n):
        diag = A[j, j] - L[j, :j] @ L[j, :j]
        if not diag > 0.0 or not np.isfinite(diag):
            raise SingularSystemError(
                f"non-positive pivot at column {j}; matrix is not positive definite"
            )
        L[j, j] = np.sqrt(diag)
        if j + 1 < n:
            L[j + 1:, j] = (A[j + 1:, j] - L[j + 1:, :j] @ L[j, :j]) / L[j, j]
    # forward substitution L z = b, then back substitution L^T x = z
    z = np.zeros(n, dtype=np.float64)
    for i in range(n):
        z[i] = (b[i] - L[i, :i] @ z[:i]) / L[i, i]
    x = np.zeros(n, dtype=np.float64)
    for i in range(n - 1, -1, -1):
        x[i] = (z[i] - L[i + 1:, i] @ x[i + 1:]) / L[i, i]
    return x


class KernelRidgeModel:
    family = "KernelRidge"

    def __init__(self, kernel: str, gamma: float, train_X: np.ndarray,
                 dual_coef: np.ndarray, training_target_mean: float):
        self.kernel = kernel
        self.gamma = gamma
        self.train_X = np.array(train_X, dtype=np.float64)
        self.dual_coef = np.array(dual_coef, dtype=np.float64)
        self.train_X.setflags(write=False)
        self.dual_coef.setflags(write=False)
        self.n_features_in = self.train_X.shape[1]
        self.training_target_mean = training_target_mean

    def predict(self, X) -> np.ndarray:
        X = _validate_query(X, self.n_features_in)
        if len(X) == 0:
            return np.empty(0, dtype=np.float64)
        K = kernel_matrix(self.kernel, self.gamma, X, self.train_X)
        # per-row reduction keeps identical query rows bitwise identical
        # (BLAS matvec blocking does not)
        return np.sum(K * self.dual_coef, axis=1)

    def to_state(self) -> dict:
        return {
            "kernel": self.kernel,
            "gamma": self.gamma,
            "train_X": self.train_X.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "training_target_mean": self.training_target_mean,
        }

    @classmethod
    def from_state(cls, state: dict) -> "KernelRidgeModel":
        return cls(state["kernel"], state["gamma"], np.array(state["train_X"]),
                   np.array(state["dual_coef"]), state["training_target_mean"])


def fit_kernel_ridge(config: KernelRidgeConfig, X, y) -> KernelRidgeModel:
    """Solve (K + alpha I) a = y; predictions are K(q, X) a."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or len(X) == 0:
        raise EmptyTrainingSetError("cannot fit kernel ridge on zero rows")
    K = kernel_matrix(config.kernel, config.gamma, X, X)
    A = K + config.alpha * np.eye(len(X))
    dual = cholesky_solve(A, y)
    return KernelRidgeModel(config.kernel, config.gamma, X, dual, float(np.mean(y)))
