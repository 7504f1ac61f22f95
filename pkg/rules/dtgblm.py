from typing import Optional, Sequence

import numpy as np

from road.models import ModelParams, RoadState
from road.random_source import RandomSource
from rules.brake_light import BrakeLightRule
from rules.common import AccelBranch, RingView, SlowdownCase, StepOutcome, Surroundings, slowdown_prob_dtgblm


class DTGBLMRule(BrakeLightRule):
    def slowdown(self, around: Surroundings, t_h: float, t_sa: float, params: ModelParams) -> tuple[float, SlowdownCase]:
        return slowdown_prob_dtgblm(around.v, around.s_leader, t_h, t_sa, params)

    def acceleration(self, around: Surroundings, free: bool, params: ModelParams) -> tuple[int, AccelBranch]:
        if not free:
            return params.blocked_acceleration, AccelBranch.A_BLOCKED
        if around.v == 0:
            return params.a_1, AccelBranch.A_1
        return params.a_2, AccelBranch.A_2

    def slowdown_vec(self, view: RingView, interacting: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        stopped = view.v == 0
        probs = np.where(interacting, params.p_b, np.where(stopped, params.p_0, params.p_d))
        cases = np.where(interacting, SlowdownCase.P_B, np.where(stopped, SlowdownCase.P_0, SlowdownCase.P_D))
        return probs, cases

    def acceleration_vec(self, view: RingView, free: np.ndarray, params: ModelParams) -> tuple[np.ndarray, np.ndarray]:
        stopped = view.v == 0
        accel = np.where(free, np.where(stopped, params.a_1, params.a_2), params.blocked_acceleration)
        branches = np.where(free, np.where(stopped, AccelBranch.A_1, AccelBranch.A_2), AccelBranch.A_BLOCKED)
        return accel, branches


_RULE = DTGBLMRule()


def dtgblm_step(
        road: RoadState,
        params: ModelParams,
        rng: RandomSource,
        order: Optional[Sequence[int]] = None
) -> StepOutcome:
    """One synchronous brake-light step.

    A free vehicle (leader's light off, or headway at least the safe headway)
    accelerates by a_1 from standstill and by a_2 otherwise; a blocked one
    uses ``params.blocked_acceleration``.
    """
    return _RULE.step(road, params, rng, order)
