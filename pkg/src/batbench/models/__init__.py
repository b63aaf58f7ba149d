"""Seven regressor families behind one fit/predict contract.

``fit_model`` dispatches on the config type through a registry; tests can
register extra families (stubs, oracles) with ``register_family``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DimensionMismatchError
from .boosting import BoostingModel, fit_gradient_boosting
from .config import (
    CONFIG_CLASSES,
    DISPLAY_NAMES,
    DecisionTreeConfig,
    GradientBoostingConfig,
    KNNConfig,
    KernelRidgeConfig,
    LogitAdaptedConfig,
    ModelConfig,
    RandomForestConfig,
    SVRConfig,
    config_to_dict,
    default_roster,
)
from .forest import ForestModel, fit_random_forest
from .kernel import KernelRidgeModel, cholesky_solve, fit_kernel_ridge, kernel_matrix
from .knn import KNNModel, fit_knn
from .logit import LogitModel, fit_logit_adapted
from .serialize import load_model, model_from_dict, model_to_dict, save_model
from .svr import SVRModel, fit_svr
from .tree import TreeModel, fit_decision_tree, grow_tree

TREE_FAMILIES = frozenset({"DecisionTree", "RandomForest", "GradientBoosting"})


@dataclass(frozen=True)
class FamilySpec:
    family: str
    config_cls: type
    fit: Callable
    scale_sensitive: bool
    display_name: str


_REGISTRY: dict[type, FamilySpec] = {}


def register_family(family: str, config_cls: type, fit: Callable,
                    scale_sensitive: bool = False,
                    display_name: str | None = None) -> None:
    _REGISTRY[config_cls] = FamilySpec(
        family, config_cls, fit, scale_sensitive, display_name or family,
    )


def unregister_family(config_cls: type) -> None:
    _REGISTRY.pop(config_cls, None)


def family_spec(config) -> FamilySpec:
    try:
        return _REGISTRY[type(config)]
    except KeyError:
        raise TypeError(f"unregistered model config type: {type(config)!r}") from None


def fit_model(config, X, y):
    """Fit the family selected by the config; returns an immutable model."""
    return family_spec(config).fit(config, X, y)


def predict(model, X) -> np.ndarray:
    """Uniform prediction surface: finite vector, one entry per query row."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatchError(f"query matrix must be 2-D, got ndim={X.ndim}")
    return model.predict(X)


register_family("KNN", KNNConfig, fit_knn, scale_sensitive=True,
                display_name=DISPLAY_NAMES["KNN"])
register_family("DecisionTree", DecisionTreeConfig, fit_decision_tree,
                display_name=DISPLAY_NAMES["DecisionTree"])
register_family("RandomForest", RandomForestConfig, fit_random_forest,
                display_name=DISPLAY_NAMES["RandomForest"])
register_family("GradientBoosting", GradientBoostingConfig, fit_gradient_boosting,
                display_name=DISPLAY_NAMES["GradientBoosting"])
register_family("KernelRidge", KernelRidgeConfig, fit_kernel_ridge,
                scale_sensitive=True, display_name=DISPLAY_NAMES["KernelRidge"])
register_family("SVR", SVRConfig, fit_svr, scale_sensitive=True,
                display_name=DISPLAY_NAMES["SVR"])
register_family("LogitAdapted", LogitAdaptedConfig, fit_logit_adapted,
                scale_sensitive=True, display_name=DISPLAY_NAMES["LogitAdapted"])

__all__ = [
    "BoostingModel", "ForestModel", "KNNModel", "KernelRidgeModel",
    "LogitModel", "SVRModel", "TreeModel",
    "KNNConfig", "DecisionTreeConfig", "RandomForestConfig",
    "GradientBoostingConfig", "KernelRidgeConfig", "SVRConfig",
    "LogitAdaptedConfig", "ModelConfig",
    "CONFIG_CLASSES", "DISPLAY_NAMES", "TREE_FAMILIES",
    "default_roster", "config_to_dict",
    "fit_model", "predict", "family_spec", "register_family",
    "unregister_family",
    "fit_knn", "fit_decision_tree", "fit_random_forest",
    "fit_gradient_boosting", "fit_kernel_ridge", "fit_svr",
    "fit_logit_adapted", "grow_tree",
    "cholesky_solve", "kernel_matrix",
    "model_to_dict", "model_from_dict", "save_model", "load_model",
]
