from typing import Callable, Iterator

from road.models import ModelParams, RoadState
from road.random_source import RandomSource
from rules.common import ModelTag, StepOutcome
from rules.dbblm import dbblm_step
from rules.dtgblm import dtgblm_step
from rules.nasch import nasch_step

StepRule = Callable[[RoadState, ModelParams, RandomSource], StepOutcome]

STEP_RULES: dict[ModelTag, StepRule] = {
    ModelTag.NASCH: nasch_step,
    ModelTag.DTGBLM: dtgblm_step,
    ModelTag.DBBLM: dbblm_step,
}


def run_simulation(model: ModelTag, road: RoadState, params: ModelParams, rng: RandomSource, steps: int) -> Iterator[RoadState]:
    """Yield the road after each of ``steps`` updates."""
    step = STEP_RULES[ModelTag(model)]
    for _ in range(steps):
        road = step(road, params, rng).next
        yield road
