import logging
from multiprocessing import Pool
from typing import Sequence

import numpy as np

from errors import WindowError
from measure.models import FdPoint, RunConfig, SpaceTimeLog
from measure.summary import KMH_PER_CELL_STEP
from road.models import ModelParams
from road.placement import init_road
from road.queries import density_to_count
from road.random_source import RandomSource
from rules.common import ModelTag
from rules.dispatch import run_simulation

logger = logging.getLogger(__name__)


def dawdle_probability(model: ModelTag, params: ModelParams) -> float:
    return params.p_nasch if model == ModelTag.NASCH else params.p_d


def _start(model: ModelTag, density: float, seed: int, run: RunConfig, params: ModelParams):
    n = density_to_count(density, run.length_cells, params.l_cell, params.l_veh)
    rng = RandomSource(seed)
    road = init_road(run.length_cells, n, run.placement, run.v_init, params, rng)
    return road, rng


def measure_point(model: ModelTag, density: float, seed: int, run: RunConfig, params: ModelParams) -> FdPoint:
    """Average the global snapshot summary over the steps after warmup.

    The vehicle count is fixed on a ring, so the mean of per-step space-mean
    speeds equals the total of all sampled speeds over (N x samples); summing
    integers keeps the average exact.
    """
    road, rng = _start(model, density, seed, run, params)
    n = road.n_vehicles

    total_speed = 0
    for road in run_simulation(model, road, params, rng, run.steps):
        if road.t > run.warmup:
            total_speed += int(road.v.sum())

    samples = run.steps - run.warmup
    mean_speed = total_speed / (n * samples) if n else 0.0
    point = FdPoint(
        model=model,
        density=n * 1000 / (run.length_cells * params.l_cell),
        space_mean_speed=mean_speed * params.l_cell * KMH_PER_CELL_STEP,
        p_d=dawdle_probability(model, params),
        p_d1=params.p_d1,
        p_d2=params.p_d2,
        phi_imp=params.phi_imp,
        seed=seed
    )
    logger.debug("%s k=%.4f seed=%d -> flow %.4f veh/h", model.value, point.density, seed, point.flow)
    return point


def _measure_cell(cell: tuple) -> FdPoint:
    return measure_point(*cell)


def fd_sweep(
        model: ModelTag,
        densities: Sequence[float],
        run: RunConfig,
        params: ModelParams,
        workers: int = 1
) -> list[FdPoint]:
    cells = [(model, density, seed, run, params) for density in densities for seed in run.seeds]
    logger.info("fd sweep %s: %d densities x %d seeds", model.value, len(densities), len(run.seeds))

    if workers > 1 and len(cells) > 1:
        with Pool(workers) as pool:
            points = pool.map(_measure_cell, cells)
    else:
        points = [_measure_cell(cell) for cell in cells]

    return sorted(points, key=lambda point: (point.density, point.seed))


def record_run(
        model: ModelTag,
        density: float,
        seed: int,
        run: RunConfig,
        window: tuple[int, int],
        params: ModelParams
) -> SpaceTimeLog:
    """Space-time samples of the states at times t_start <= t < t_end."""
    t_start, t_end = window
    if t_end <= t_start:
        raise WindowError(f"empty window [{t_start}, {t_end})")
    if t_start < 0 or t_end > run.steps:
        raise WindowError(f"window [{t_start}, {t_end}) outside the run of {run.steps} steps")

    road, rng = _start(model, density, seed, run, params)
    snapshots = [road] if t_start == 0 else []
    for road in run_simulation(model, road, params, rng, t_end - 1):
        if road.t >= t_start:
            snapshots.append(road)

    return SpaceTimeLog(
        length_cells=run.length_cells,
        vehicle_length=params.l_veh,
        t=np.arange(t_start, t_end, dtype=np.int64),
        x=np.array([snapshot.x for snapshot in snapshots], dtype=np.int64),
        v=np.array([snapshot.v for snapshot in snapshots], dtype=np.int64),
        s=np.array([snapshot.s for snapshot in snapshots], dtype=np.int8),
        i_class=np.array(road.i_class, dtype=np.int8)
    )


def occupancy_raster(log: SpaceTimeLog) -> np.ndarray:
    """Time x cell matrix: speed of the vehicle covering the cell, -1 where empty."""
    raster = np.full((log.n_steps, log.length_cells), -1, dtype=np.int16)
    if log.n_vehicles == 0:
        return raster

    rows = np.arange(log.n_steps)[:, None]
    for offset in range(log.vehicle_length):
        cells = (log.x - offset) % log.length_cells
        raster[rows, cells] = log.v
    return raster
