from collections import defaultdict
from typing import Sequence

import numpy as np

from measure.models import FdPoint, SpaceTimeLog
from road.models import ModelParams, RoadState

KMH_PER_CELL_STEP = 3.6  # m/s to km/h; one step is one second


def summarize(road: RoadState, params: ModelParams) -> tuple[float, float, float]:
    """(density veh/km, space-mean speed km/h, flow veh/h) of one snapshot."""
    n = road.n_vehicles
    if n == 0:
        return 0.0, 0.0, 0.0

    density = n * 1000 / (road.length_cells * params.l_cell)
    speed = float(road.v.mean()) * params.l_cell * KMH_PER_CELL_STEP
    return density, speed, density * speed


def detector_flow(log: SpaceTimeLog, site: int, length_cells: int) -> float:
    """Vehicles per hour passing a fixed cell.

    A record (x, v) counts as a crossing when the move that ended at x
    covered ``site``, i.e. site lies in (x - v, x] around the ring.
    """
    if not 0 <= site < length_cells:
        raise ValueError(f"detector site {site} outside [0, {length_cells})")
    if log.n_steps == 0 or log.n_vehicles == 0:
        return 0.0

    crossings = np.count_nonzero((log.x - site) % length_cells < log.v)
    return crossings * 3600 / log.n_steps


def compare_flows(baseline: Sequence[FdPoint], other: Sequence[FdPoint]) -> list[tuple[float, float]]:
    """Seed-averaged flow difference (other - baseline) at every density both sweeps cover."""

    def mean_by_density(points: Sequence[FdPoint]) -> dict[float, float]:
        grouped = defaultdict(list)
        for point in points:
            grouped[round(point.density, 9)].append(point.flow)
        return {density: sum(flows) / len(flows) for density, flows in grouped.items()}

    base = mean_by_density(baseline)
    compared = mean_by_density(other)
    return [(density, compared[density] - base[density]) for density in sorted(base.keys() & compared.keys())]
