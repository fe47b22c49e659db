"""
Counter-based seeded random streams for reproducible simulation.

Every stream is a numpy ``Philox`` generator whose 128-bit key is derived from a
root seed plus an integer path (for example ``(seed, draw_index)`` or
``(master, STREAM_OFFSPRING, generation, individual)``). Philox is counter
based: the k-th double produced by a stream is a pure function of the key and
k, so a cell of a volume field keyed by ``(seed, draw_index, i, t)`` can be
regenerated in any order, or in parallel, without replaying the others.
"""

from typing import Sequence, Tuple

import numpy as np

UINT64_MASK = (1 << 64) - 1

# Named sub-stream identifiers used as the first path element.
STREAM_VOLUMES = 1
STREAM_INIT = 2
STREAM_OFFSPRING = 3
STREAM_EVALUATION = 4
STREAM_MOEAD = 5
STREAM_NETWORK = 6


def _normalise_path(path: Sequence[int]) -> Tuple[int, ...]:
    for value in path:
        if int(value) < 0:
            raise ValueError(f"Stream path elements must be non-negative, got {value}")
    return tuple(int(v) for v in path)


def derive_seed(seed: int, *path: int) -> int:
    """
    Derive an independent 64-bit seed from a root seed and an integer path.

    The derivation is ``numpy.random.SeedSequence(seed, spawn_key=path)`` and
    the first 64-bit word of its generated state. It is the documented hash
    used for per-run seeds ``(master seed, algorithm index, repetition)``.
    """
    if seed < 0:
        raise ValueError(f"Seed {seed} must be a non-negative integer")
    sequence = np.random.SeedSequence(int(seed) & UINT64_MASK, spawn_key=_normalise_path(path))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class SeededStream:
    """Philox-backed random stream keyed by ``(seed, *path)``."""

    def __init__(self, seed: int, *path: int):
        self._seed = int(seed) & UINT64_MASK
        self._path = _normalise_path(path)
        sequence = np.random.SeedSequence(self._seed, spawn_key=self._path)
        words = sequence.generate_state(2, dtype=np.uint64)
        key = (int(words[0]) << 64) | int(words[1])
        self._generator = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self) -> str:
        return f"SeededStream(seed={self._seed}, path={self._path})"

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def path(self) -> Tuple[int, ...]:
        return self._path

    @property
    def generator(self) -> np.random.Generator:
        return self._generator

    def child(self, *path: int) -> "SeededStream":
        """Create an independent stream keyed by this stream's path extended by ``path``."""
        return SeededStream(self._seed, *(self._path + _normalise_path(path)))

    def random(self, size=None):
        return self._generator.random(size)

    def uniform(self, low: float, high: float, size=None):
        return self._generator.uniform(low, high, size)

    def integers(self, low: int, high: int, size=None):
        return self._generator.integers(low, high, size=size)

    def choice(self, values, size=None, replace: bool = True):
        return self._generator.choice(values, size=size, replace=replace)

    def permutation(self, values) -> np.ndarray:
        """Shuffled copy of ``values``, or of ``range(values)`` for an integer."""
        return self._generator.permutation(values)
