from dataclasses import dataclass
from enum import Enum
from typing import Iterator, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from road.models import InitialSpeed, Placement
from rules.common import ModelTag


class FdPoint(BaseModel):
    """One fundamental-diagram sample; flow is density times speed by construction."""

    model_config = ConfigDict(frozen=True)

    model: ModelTag
    density: float
    space_mean_speed: float
    p_d: float
    p_d1: float
    p_d2: float
    phi_imp: float
    seed: int

    @computed_field
    @property
    def flow(self) -> float:
        return self.density * self.space_mean_speed


class WaveSpeedEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    speed_kmh: float
    slope_cells_per_step: float
    residual_rms_cells: float
    points: int


class Phase(str, Enum):
    FREE_FLOW = "FreeFlow"
    SYNCHRONIZED = "Synchronized"
    WIDE_JAM = "WideJam"


class PhaseThresholds(BaseModel):
    model_config = ConfigDict(frozen=True)

    free_speed_ratio: float = Field(default=0.9, ge=0, le=1)
    free_cluster_size: int = Field(default=3, ge=1)
    free_persistence: int = Field(default=10, ge=1)
    wide_cluster_size: int = Field(default=5, ge=1)
    wide_persistence: int = Field(default=100, ge=1)


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    length_cells: int = Field(default=2500, ge=1)
    steps: int = Field(default=10000, ge=1)
    warmup: int = Field(default=5000, ge=0)
    seeds: tuple[int, ...] = (1, 2, 3, 4, 5)
    placement: Placement = Placement.UNIFORM
    v_init: InitialSpeed = InitialSpeed.ZERO

    @model_validator(mode="after")
    def check_warmup(self) -> "RunConfig":
        if self.warmup >= self.steps:
            raise ValueError(f"warmup ({self.warmup}) must be smaller than steps ({self.steps})")
        return self


class SpaceTimeRecord(NamedTuple):
    t: int
    veh: int
    x: int
    v: int
    s: int
    i: int


@dataclass(frozen=True)
class SpaceTimeLog:
    """Per-step vehicle samples over the window [t_start, t_end).

    ``x``, ``v`` and ``s`` have shape (steps, vehicles); row k holds time ``t[k]``.
    """

    length_cells: int
    vehicle_length: int
    t: np.ndarray
    x: np.ndarray
    v: np.ndarray
    s: np.ndarray
    i_class: np.ndarray

    def __post_init__(self):
        for name in ("t", "x", "v", "s", "i_class"):
            getattr(self, name).setflags(write=False)

    @property
    def n_steps(self) -> int:
        return len(self.t)

    @property
    def n_vehicles(self) -> int:
        return len(self.i_class)

    @property
    def window(self) -> tuple[int, int]:
        if self.n_steps == 0:
            return 0, 0
        return int(self.t[0]), int(self.t[-1]) + 1

    def __len__(self) -> int:
        return self.n_steps * self.n_vehicles

    def records(self) -> Iterator[SpaceTimeRecord]:
        for k, t in enumerate(self.t):
            for veh in range(self.n_vehicles):
                yield SpaceTimeRecord(
                    int(t), veh, int(self.x[k, veh]), int(self.v[k, veh]), int(self.s[k, veh]), int(self.i_class[veh])
                )
