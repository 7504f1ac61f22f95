from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Annotated, Optional

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, model_validator


def _check_probability(value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ValueError("probability out of range [0, 1]")
    return value


Probability = Annotated[float, AfterValidator(_check_probability)]
Acceleration = Annotated[int, Field(ge=0)]


class Placement(str, Enum):
    UNIFORM = "uniform"
    MEGAJAM = "megajam"


class InitialSpeed(str, Enum):
    ZERO = "zero"
    VMAX = "vmax"


class ModelParams(BaseModel):
    """Parameter set shared by the three update rules.

    Defaults are the reference calibration; the driver-behaviour extensions
    (a_1, a_2, a_3, p_d1, p_d2, phi_imp) and p_nasch are implementer defaults.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    l_cell: float = Field(default=1.5, gt=0)
    l_veh: int = Field(default=5, ge=1)
    v_max: int = Field(default=20, ge=1)
    h: float = Field(default=6.0, gt=0)
    T: float = 2.8

    p_b: Probability = 0.8
    p_0: Probability = 0.45
    p_d: Probability = 0.01
    p_d1: Probability = 0.10
    p_d2: Probability = 0.01
    p_nasch: Probability = 0.25

    a: Acceleration = 1
    a_1: Acceleration = 2
    a_2: Acceleration = 1
    a_3: Acceleration = 1
    # acceleration in the DTGBLM blocked branch; None means a_2
    a_blocked: Optional[Acceleration] = None

    b_rand: int = Field(default=1, ge=0)
    b_anti: int = Field(default=5, ge=0)
    b_m: int = Field(default=5, ge=0)
    v_cri: int = Field(default=5, ge=0)

    phi_imp: Probability = 0.5

    @model_validator(mode="after")
    def check_constraints(self) -> "ModelParams":
        if self.T <= 1:
            raise ValueError(f"T must be greater than 1 s, got {self.T}")
        if self.b_anti < self.b_rand:
            raise ValueError(
                f"collision-free update requires b_anti >= b_rand (b_anti={self.b_anti}, b_rand={self.b_rand})"
            )
        return self

    @property
    def blocked_acceleration(self) -> int:
        return self.a_2 if self.a_blocked is None else self.a_blocked

    @property
    def jam_density(self) -> float:
        """Bumper-to-bumper density in veh/km."""
        return 1000.0 / (self.l_veh * self.l_cell)


class VehicleState(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    x: int
    v: int
    s: int
    i_class: int


def _frozen_array(values, dtype) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class RoadState:
    """Ring road at one instant.

    Vehicle data is held column-wise, indexed by vehicle id. Ids follow the
    cyclic order of the ring, so the leader of vehicle n is n + 1 (mod N).
    """

    length_cells: int
    vehicle_length: int
    t: int = 0
    x: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    v: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    s: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))
    i_class: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int8))

    def __post_init__(self):
        object.__setattr__(self, "x", _frozen_array(self.x, np.int64))
        object.__setattr__(self, "v", _frozen_array(self.v, np.int64))
        object.__setattr__(self, "s", _frozen_array(self.s, np.int8))
        object.__setattr__(self, "i_class", _frozen_array(self.i_class, np.int8))

        n = len(self.x)
        if not (len(self.v) == len(self.s) == len(self.i_class) == n):
            raise ValueError("vehicle columns must have equal length")
        if n * self.vehicle_length > self.length_cells:
            raise ValueError(f"{n} vehicles of length {self.vehicle_length} do not fit on {self.length_cells} cells")
        if n and (self.x.min() < 0 or self.x.max() >= self.length_cells):
            raise ValueError("vehicle position outside [0, L)")

    @property
    def n_vehicles(self) -> int:
        return len(self.x)

    def vehicle(self, n: int) -> VehicleState:
        return VehicleState(
            id=n,
            x=int(self.x[n]),
            v=int(self.v[n]),
            s=int(self.s[n]),
            i_class=int(self.i_class[n]),
        )

    @property
    def vehicles(self) -> tuple[VehicleState, ...]:
        return tuple(self.vehicle(n) for n in range(self.n_vehicles))

    def advance(self, x: np.ndarray, v: np.ndarray, s: np.ndarray) -> "RoadState":
        return replace(self, t=self.t + 1, x=x, v=v, s=s)
