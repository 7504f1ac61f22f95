from typing import Iterable

import numpy as np


class ScriptedRandomSource:
    """Stands in for RandomSource: replays fixed draws, then repeats ``fill``."""

    algorithm = "scripted"
    seed = 0

    def __init__(self, values: Iterable[float] = (), fill: float = 1.0):
        self._values = [float(value) for value in values]
        self._position = 0
        self._fill = fill

    def draws(self, n: int) -> np.ndarray:
        chunk = self._values[self._position:self._position + n]
        self._position += len(chunk)
        chunk += [self._fill] * (n - len(chunk))
        return np.array(chunk, dtype=np.float64)
