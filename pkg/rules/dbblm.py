from typing import Optional, Sequence

import numpy as np

from road.models import ModelParams, RoadState
from road.random_source import RandomSource
from rules.brake_light import BrakeLightRule
from rules.common import AccelBranch, RingView, SlowdownCase, StepOutcome, Surroundings, slowdown_prob_dbblm


class DBBLMRule(BrakeLightRule):
    def slowdown(self, around: Surroundings, t_h: float, t_sa: float, params: ModelParams) -> tuple[float, SlowdownCase]:
        return slowdown_prob_dbblm(around.v, around.s_leader, t_h, t_sa, around.i_class, params)

    def acceleration(self, around: Surroundings, free: bool, params: ModelParams) -> tuple[int, AccelBranch]:
        if not free:
            return params.a_3, AccelBranch.A_3
        if around.i_class == 1:
            return params.a_1, AccelBranch.A_1
        return params.a_2, AccelBranch.A_2

    def slowdown_vec(self, view: RingView, interacting: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        stopped = view.v == 0
        impatient = view.i_class == 1
        probs = np.where(
            interacting, params.p_b,
            np.where(stopped, params.p_0, np.where(impatient, params.p_d1, params.p_d2))
        )
        cases = np.where(
            interacting, SlowdownCase.P_B,
            np.where(stopped, SlowdownCase.P_0, np.where(impatient, SlowdownCase.P_D1, SlowdownCase.P_D2))
        )
        return probs, cases

    def acceleration_vec(self, view: RingView, free: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        impatient = view.i_class == 1
        accel = np.where(free, np.where(impatient, params.a_1, params.a_2), params.a_3)
        branches = np.where(free, np.where(impatient, AccelBranch.A_1, AccelBranch.A_2), AccelBranch.A_3)
        return accel, branches


_RULE = DBBLMRule()


def dbblm_step(
        road: RoadState,
        params: ModelParams,
        rng: RandomSource,
        order: Optional[Sequence[int]] = None
) -> StepOutcome:
    """One synchronous step of the driver-behaviour brake-light rule.

    Impatient drivers (i_class = 1) accelerate by a_1 and dawdle with p_d1,
    normal drivers use a_2 and p_d2; a blocked vehicle of either class uses a_3.
    """
    return _RULE.step(road, params, rng, order)
