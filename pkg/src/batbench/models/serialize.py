"""JSON round-trip for trained models: family tag plus numeric state arrays."""

from __future__ import annotations

import json

from .boosting import BoostingModel
from .forest import ForestModel
from .kernel import KernelRidgeModel
from .knn import KNNModel
from .logit import LogitModel
from .svr import SVRModel
from .tree import TreeModel

FORMAT_VERSION = 1

_MODEL_CLASSES = {
    cls.family: cls
    for cls in (KNNModel, TreeModel, ForestModel, BoostingModel,
                KernelRidgeModel, SVRModel, LogitModel)
}


def model_to_dict(model) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "family": model.family,
        "state": model.to_state(),
    }


def model_from_dict(doc: dict):
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version: {doc.get('format_version')!r}")
    family = doc["family"]
    if family not in _MODEL_CLASSES:
        raise ValueError(f"unknown model family {family!r}")
    return _MODEL_CLASSES[family].from_state(doc["state"])


def save_model(model, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(model_to_dict(model), fh)


def load_model(path):
    with open(path, encoding="utf-8") as fh:
        return model_from_dict(json.load(fh))
