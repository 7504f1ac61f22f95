import numpy as np
import pytest

from measure.models import SpaceTimeLog
from road.models import ModelParams, RoadState


@pytest.fixture
def default_params() -> ModelParams:
    return ModelParams()


@pytest.fixture
def make_road():
    def factory(length, x, v, s=None, i_class=None, vehicle_length=5, t=0):
        n = len(x)
        return RoadState(
            length_cells=length,
            vehicle_length=vehicle_length,
            t=t,
            x=x,
            v=v,
            s=s if s is not None else [0] * n,
            i_class=i_class if i_class is not None else [0] * n
        )

    return factory


@pytest.fixture
def make_log():
    """SpaceTimeLog from (steps, vehicles) position and speed grids, starting at t=0."""

    def factory(x, v, length=100, vehicle_length=5):
        x = np.asarray(x, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        steps, n = x.shape
        return SpaceTimeLog(
            length_cells=length,
            vehicle_length=vehicle_length,
            t=np.arange(steps, dtype=np.int64),
            x=x,
            v=v,
            s=np.zeros((steps, n), dtype=np.int8),
            i_class=np.zeros(n, dtype=np.int8)
        )

    return factory
