"""Deterministic uniform draws for the synchronous update.

The stream algorithm is numpy's PCG64 bit generator read through
``Generator.random`` (53-bit doubles on [0, 1)). It is pinned here and
reported by ``RandomSource.algorithm``; the platform default generator is
never used. Every step takes exactly one draw per vehicle, index = vehicle id.
"""
import numpy as np


class RandomSource:
    algorithm = "numpy-pcg64"

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self._seed = seed
        self._generator = np.random.Generator(np.random.PCG64(seed))

    @property
    def seed(self) -> int:
        return self._seed

    def draws(self, n: int) -> np.ndarray:
        return self._generator.random(n)

