"""Tabular regression toolkit and benchmark CLI for baseball training data."""

__version__ = "0.1.0"

from . import dataset, datagen, evaluation, importance, models  # noqa: F401
