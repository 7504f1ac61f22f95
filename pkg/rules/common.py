import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import NamedTuple

import numpy as np

from road.models import ModelParams, RoadState
from road.queries import gaps


class ModelTag(str, Enum):
    NASCH = "nasch"
    DTGBLM = "dtgblm"
    DBBLM = "dbblm"


class SlowdownCase(IntEnum):
    P_B = 0
    P_0 = 1
    P_D = 2
    P_D1 = 3
    P_D2 = 4
    P_NASCH = 5

    @property
    def tag(self) -> str:
        return self.name.lower()


class AccelBranch(IntEnum):
    A = 0
    A_1 = 1
    A_2 = 2
    A_3 = 3
    A_BLOCKED = 4

    @property
    def tag(self) -> str:
        return self.name.lower()


class VehicleDecision(NamedTuple):
    case: SlowdownCase
    randomized: bool
    branch: AccelBranch


@dataclass(frozen=True)
class StepOutcome:
    next: RoadState
    cases: np.ndarray
    randomized: np.ndarray
    branches: np.ndarray

    @property
    def decisions(self) -> tuple[VehicleDecision, ...]:
        return tuple(
            VehicleDecision(SlowdownCase(int(case)), bool(fired), AccelBranch(int(branch)))
            for case, fired, branch in zip(self.cases, self.randomized, self.branches)
        )


class Surroundings(NamedTuple):
    """Time-t quantities one vehicle reads during its update."""
    v: int
    d: int
    s_leader: int
    v_leader: int
    d_leader: int
    i_class: int


@dataclass(frozen=True)
class RingView:
    """The same quantities for every vehicle at once, indexed by id."""
    v: np.ndarray
    d: np.ndarray
    s_leader: np.ndarray
    v_leader: np.ndarray
    d_leader: np.ndarray
    i_class: np.ndarray

    @classmethod
    def of(cls, road: RoadState) -> "RingView":
        d = gaps(road)
        return cls(
            v=road.v,
            d=d,
            s_leader=np.roll(road.s, -1),
            v_leader=np.roll(road.v, -1),
            d_leader=np.roll(d, -1),
            i_class=road.i_class
        )

    def around(self, n: int) -> Surroundings:
        return Surroundings(
            v=int(self.v[n]),
            d=int(self.d[n]),
            s_leader=int(self.s_leader[n]),
            v_leader=int(self.v_leader[n]),
            d_leader=int(self.d_leader[n]),
            i_class=int(self.i_class[n])
        )

    def time_headways(self) -> np.ndarray:
        moving = self.v > 0
        headways = np.full(len(self.v), np.inf)
        headways[moving] = self.d[moving] / self.v[moving]
        return headways


def anticipated_speed(d_leader_gap: int, v_leader: int) -> int:
    return min(d_leader_gap, v_leader)


def effective_gap(d: int, v_anti: int, b_anti: int) -> int:
    return d + max(v_anti - b_anti, 0)


def slowdown_prob_dtgblm(v: int, s_leader: int, t_h: float, t_sa: float, params: ModelParams) -> tuple[float, SlowdownCase]:
    if s_leader == 1 and t_h < t_sa:
        return params.p_b, SlowdownCase.P_B
    if v == 0:
        return params.p_0, SlowdownCase.P_0
    return params.p_d, SlowdownCase.P_D


def slowdown_prob_dbblm(
        v: int,
        s_leader: int,
        t_h: float,
        t_sa: float,
        i_class: int,
        params: ModelParams
) -> tuple[float, SlowdownCase]:
    if s_leader == 1 and t_h < t_sa:
        return params.p_b, SlowdownCase.P_B
    if v == 0:
        return params.p_0, SlowdownCase.P_0
    if i_class == 1:
        return params.p_d1, SlowdownCase.P_D1
    return params.p_d2, SlowdownCase.P_D2


def headway_speed_limit(d_eff: int, T: float) -> int:
    return math.floor(d_eff / T)


def leader_speed_floor(v_leader: int, d_leader: int, params: ModelParams) -> int:
    """Lowest speed the leader can end the step with under the brake-light rules.

    Its acceleration sub-step never goes below min(v_leader, floor(d_leader / T))
    and randomization removes at most b_rand on top of that.
    """
    return max(min(v_leader, math.floor(d_leader / params.T)) - params.b_rand, 0)


def finish_step(
        road: RoadState,
        v_next: np.ndarray,
        s_next: np.ndarray,
        cases: np.ndarray,
        randomized: np.ndarray,
        branches: np.ndarray
) -> StepOutcome:
    x_next = (road.x + v_next) % road.length_cells
    return StepOutcome(
        next=road.advance(x_next, v_next, s_next),
        cases=cases.astype(np.int8),
        randomized=randomized.astype(bool),
        branches=branches.astype(np.int8)
    )
