"""Deterministic integer seed derivation (no reliance on salted hashes)."""

from __future__ import annotations

_MULT = 6364136223846793005
_INC = 1442695040888963407
_MASK = (1 << 63) - 1


def mix_seed(seed: int, *tags: int) -> int:
    """Fold integer tags into a seed; deterministic across runs and platforms."""
    acc = seed & _MASK
    for t in tags:
        acc = (acc * _MULT + (t & _MASK) * _INC + 1) & _MASK
    return acc
