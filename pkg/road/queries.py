import math

import numpy as np

from errors import RoadError
from road.models import RoadState


def _check_index(road: RoadState, n: int) -> None:
    if road.n_vehicles == 0:
        raise RoadError("road has no vehicles")
    if not 0 <= n < road.n_vehicles:
        raise RoadError(f"vehicle index {n} out of range for {road.n_vehicles} vehicles")


def gaps(road: RoadState) -> np.ndarray:
    """Empty cells in front of every vehicle, indexed by vehicle id."""
    return (np.roll(road.x, -1) - road.x - road.vehicle_length) % road.length_cells


def gap(road: RoadState, n: int) -> int:
    _check_index(road, n)
    leader = (n + 1) % road.n_vehicles
    return int((road.x[leader] - road.x[n] - road.vehicle_length) % road.length_cells)


def time_headway(road: RoadState, n: int) -> float:
    d = gap(road, n)
    v = int(road.v[n])
    return d / v if v > 0 else math.inf


def safe_headway(v: int, h: float) -> float:
    return float(min(v, h))


def density_to_count(k: float, length_cells: int, l_cell: float, l_veh: int = 5) -> int:
    """Vehicle count for a density in veh/km, rounded half up and capped at bumper-to-bumper."""
    count = math.floor(k * length_cells * l_cell / 1000 + 0.5)
    return max(0, min(count, length_cells // l_veh))
