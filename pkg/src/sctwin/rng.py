"""Deterministic RNG substreams.

One generator family (PCG64) is used project-wide. Every consumer derives
its own substream from the base seed plus a path of labels, so results are
reproducible bit-for-bit regardless of execution order across replications.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _encode(part) -> int:
    if isinstance(part, (int, np.integer)):
        return int(part) & 0xFFFFFFFFFFFFFFFF
    if isinstance(part, str):
        digest = hashlib.blake2s(part.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big")
    raise TypeError(f"substream path parts must be int or str, got {type(part)!r}")


def substream(base_seed: int, *path) -> np.random.Generator:
    """Generator for the substream identified by (base_seed, *path).

    Path parts are ints or strings, e.g. substream(seed, "S2", 17, "arrivals").
    """
    entropy = [_encode(base_seed)] + [_encode(p) for p in path]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
