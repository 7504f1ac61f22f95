from typing import Optional, Sequence

import numpy as np

from road.models import ModelParams, RoadState
from road.random_source import RandomSource
from rules.common import AccelBranch, RingView, SlowdownCase, StepOutcome, Surroundings, finish_step


def _update_vehicle(around: Surroundings, params: ModelParams, r: float) -> tuple[int, bool]:
    v = min(around.v + params.a, params.v_max)
    v = min(v, around.d)
    fired = r < params.p_nasch
    if fired:
        v = max(v - 1, 0)
    return v, fired


def nasch_step(
        road: RoadState,
        params: ModelParams,
        rng: RandomSource,
        order: Optional[Sequence[int]] = None
) -> StepOutcome:
    """Accelerate, clamp to the gap, dawdle by one cell with p_nasch, move.

    With ``order`` the vehicles are processed one at a time in that order;
    the result is the same as the vectorized update.
    """
    n = road.n_vehicles
    draws = rng.draws(n)
    view = RingView.of(road)

    cases = np.full(n, SlowdownCase.P_NASCH, dtype=np.int8)
    branches = np.full(n, AccelBranch.A, dtype=np.int8)
    lights = np.zeros(n, dtype=np.int8)

    if order is None:
        v_next = np.minimum(np.minimum(view.v + params.a, params.v_max), view.d)
        fired = draws < params.p_nasch
        v_next = np.where(fired, np.maximum(v_next - 1, 0), v_next)
    else:
        v_next = np.zeros(n, dtype=np.int64)
        fired = np.zeros(n, dtype=bool)
        for index in order:
            v_next[index], fired[index] = _update_vehicle(view.around(index), params, draws[index])

    return finish_step(road, v_next, lights, cases, fired, branches)
