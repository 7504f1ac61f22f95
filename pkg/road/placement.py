import logging

import numpy as np

from errors import RoadError
from road.models import InitialSpeed, ModelParams, Placement, RoadState
from road.random_source import RandomSource

logger = logging.getLogger(__name__)


def assign_driver_classes(n: int, phi_imp: float, rng: RandomSource) -> np.ndarray:
    """Impatient (1) or normal (0) driver per vehicle, fixed for the whole run."""
    if not 0.0 <= phi_imp <= 1.0:
        raise ValueError(f"phi_imp must be in [0, 1], got {phi_imp}")
    return (rng.draws(n) < phi_imp).astype(np.int8)


def init_road(
        length_cells: int,
        n: int,
        placement: Placement,
        v_init: InitialSpeed,
        params: ModelParams,
        rng: RandomSource
) -> RoadState:
    if n < 0:
        raise RoadError(f"vehicle count must be non-negative, got {n}")

    required = n * params.l_veh
    if required > length_cells:
        raise RoadError(
            f"road too short: {n} vehicles of length {params.l_veh} need at least {required} cells, got {length_cells}"
        )

    ids = np.arange(n, dtype=np.int64)
    if placement == Placement.MEGAJAM:
        x = ids * params.l_veh
        v = np.zeros(n, dtype=np.int64)
    else:
        x = ids * length_cells // max(n, 1)
        speed = params.v_max if v_init == InitialSpeed.VMAX else 0
        v = np.full(n, speed, dtype=np.int64)

    i_class = assign_driver_classes(n, params.phi_imp, rng)

    logger.debug("placed %d vehicles on %d cells (%s, v_init=%s)", n, length_cells, placement.value, v_init.value)
    return RoadState(
        length_cells=length_cells,
        vehicle_length=params.l_veh,
        t=0,
        x=x,
        v=v,
        s=np.zeros(n, dtype=np.int8),
        i_class=i_class
    )
