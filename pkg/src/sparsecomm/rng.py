"""Deterministic random-number streams.

Every randomized operation in the package takes an explicit generator, so a
Monte-Carlo harness can hand one independent stream to each trial and rerun
any single trial bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RngStream", "as_generator"]


@dataclass(frozen=True)
class RngStream:
    """Addressable random stream: identical (seed, stream_id) gives identical draws."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        return np.random.default_rng([int(self.seed), int(self.stream_id)])

    def substream(self, *indices: int) -> "np.random.Generator":
        """Generator for a nested stream, e.g. (point, trial) inside a sweep."""
        return np.random.default_rng([int(self.seed), int(self.stream_id), *map(int, indices)])


def as_generator(rng) -> np.random.Generator:
    """Coerce an RngStream, integer seed, or Generator into a Generator."""
    if isinstance(rng, np.random.Generator):
        return rng
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, (int, np.integer)):
        return np.random.default_rng(int(rng))
    raise TypeError(f"cannot interpret {type(rng).__name__} as a random generator")
