"""Shared machinery of the two brake-light rules.

Both rules run the same sub-steps per vehicle: choose the slowdown
probability, reset the own brake light, accelerate under the headway-time
bound, randomize, move. They differ only in how the probability and the
acceleration are chosen, which subclasses supply in scalar and vectorized
form.
"""
import math
from typing import Optional, Sequence

import numpy as np

from road.models import ModelParams, RoadState
from road.queries import safe_headway
from road.random_source import RandomSource
from rules.common import (
    AccelBranch,
    RingView,
    SlowdownCase,
    StepOutcome,
    Surroundings,
    anticipated_speed,
    effective_gap,
    finish_step,
    headway_speed_limit,
    leader_speed_floor,
)


class BrakeLightRule:
    def slowdown(self, around: Surroundings, t_h: float, t_sa: float, params: ModelParams) -> tuple[float, SlowdownCase]:
        raise NotImplementedError

    def acceleration(self, around: Surroundings, free: bool, params: ModelParams) -> tuple[int, AccelBranch]:
        raise NotImplementedError

    def slowdown_vec(self, view: RingView, interacting: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def acceleration_vec(self, view: RingView, free: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def update_vehicle(self, around: Surroundings, params: ModelParams, r: float) -> tuple[int, int, SlowdownCase, bool, AccelBranch]:
        t_h = around.d / around.v if around.v > 0 else math.inf
        t_sa = safe_headway(around.v, params.h)

        p, case = self.slowdown(around, t_h, t_sa, params)
        light = 0

        free = around.s_leader == 0 or t_h >= t_sa
        accel, branch = self.acceleration(around, free, params)

        v_anti = anticipated_speed(around.d_leader, around.v_leader)
        d_eff = effective_gap(around.d, v_anti, params.b_anti)
        v = min(
            around.v + accel,
            params.v_max,
            headway_speed_limit(d_eff, params.T),
            around.d + leader_speed_floor(around.v_leader, around.d_leader, params)
        )
        if v < around.v:
            light = 1

        fired = r < p
        if fired:
            v = max(v - params.b_rand, 0)
            if case == SlowdownCase.P_B:
                light = 1

        return v, light, case, fired, branch

    def step(self, road: RoadState, params: ModelParams, rng: RandomSource, order: Optional[Sequence[int]] = None) -> StepOutcome:
        n = road.n_vehicles
        draws = rng.draws(n)
        view = RingView.of(road)

        if order is not None:
            v_next = np.zeros(n, dtype=np.int64)
            lights = np.zeros(n, dtype=np.int8)
            cases = np.zeros(n, dtype=np.int8)
            fired = np.zeros(n, dtype=bool)
            branches = np.zeros(n, dtype=np.int8)
            for index in order:
                v_next[index], lights[index], cases[index], fired[index], branches[index] = self.update_vehicle(
                    view.around(index), params, draws[index]
                )
            return finish_step(road, v_next, lights, cases, fired, branches)

        t_h = view.time_headways()
        t_sa = np.minimum(view.v, params.h)
        interacting = (view.s_leader == 1) & (t_h < t_sa)

        probs, cases = self.slowdown_vec(view, interacting, params)
        accel, branches = self.acceleration_vec(view, ~interacting, params)

        v_anti = np.minimum(view.d_leader, view.v_leader)
        d_eff = view.d + np.maximum(v_anti - params.b_anti, 0)
        leader_floor = np.maximum(
            np.minimum(view.v_leader, np.floor(view.d_leader / params.T).astype(np.int64)) - params.b_rand, 0
        )
        limit = np.minimum(np.floor(d_eff / params.T).astype(np.int64), view.d + leader_floor)
        v_acc = np.minimum(np.minimum(view.v + accel, params.v_max), limit)

        fired = draws < probs
        v_next = np.where(fired, np.maximum(v_acc - params.b_rand, 0), v_acc)
        lights = (v_acc < view.v) | (fired & (cases == SlowdownCase.P_B))

        return finish_step(road, v_next, lights.astype(np.int8), cases, fired, branches)
