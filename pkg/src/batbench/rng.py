"""Deterministic seed derivation.

Every stochastic consumer (forest trees, permutation repeats, generated
columns) gets its own stream seeded by a stable hash of (root seed, label,
index), so results cannot depend on scheduling order or on Python's salted
``hash``.
"""

import hashlib


def derive_seed(root: int, label: str, index: int = 0) -> int:
    """Derive an independent 63-bit seed from a root seed and consumer label."""
    digest = hashlib.sha256(f"{root}:{label}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1
