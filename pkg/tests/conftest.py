from pathlib import Path

import numpy as np
import pytest

from batbench.dataset import FEATURE_NAMES, Dataset, load_csv

CANONICAL_PATH = Path(__file__).resolve().parents[1] / "data" / "canonical.csv"


@pytest.fixture(scope="session")
def canonical_path() -> Path:
    return CANONICAL_PATH


@pytest.fixture(scope="session")
def canonical(canonical_path) -> Dataset:
    return load_csv(canonical_path)


def make_dataset(features, target, n_dropped=0) -> Dataset:
    """Dataset from raw arrays, padding feature count up to the schema's 16."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape[1] != len(FEATURE_NAMES):
        pad = np.zeros((features.shape[0], len(FEATURE_NAMES) - features.shape[1]))
        features = np.hstack([features, pad])
    return Dataset(
        feature_names=FEATURE_NAMES,
        features=features,
        target=np.asarray(target, dtype=np.float64),
        n_rows=features.shape[0],
        n_dropped=n_dropped,
    )


def write_table(path, header, rows) -> Path:
    lines = [",".join(header)]
    lines += [",".join(str(c) for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")
    return path
