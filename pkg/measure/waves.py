import logging
from typing import Mapping, Optional, Sequence

import numpy as np

from errors import InsufficientJamSignal
from measure.models import SpaceTimeLog, WaveSpeedEstimate
from measure.summary import KMH_PER_CELL_STEP

logger = logging.getLogger(__name__)

MIN_FRONT_POINTS = 10
DEFAULT_JAM_THRESHOLD = 5
DEFAULT_MAX_FRONT_JUMP = 20


def jam_clusters(x: np.ndarray, v: np.ndarray, length_cells: int, vehicle_length: int, threshold: int) -> list[np.ndarray]:
    """Runs of consecutive jammed vehicles (v <= threshold), each listed upstream to downstream.

    When every vehicle is jammed the ring is cut behind the vehicle with the
    largest gap behind it, so the single cluster still has an upstream end.
    """
    n = len(v)
    jammed = v <= threshold
    if n == 0 or not jammed.any():
        return []

    if jammed.all():
        gaps = (np.roll(x, -1) - x - vehicle_length) % length_cells
        start = (int(np.argmax(gaps)) + 1) % n
        return [np.roll(np.arange(n), -start)]

    first_free = int(np.argmin(jammed))
    order = np.roll(np.arange(n), -first_free)
    edges = np.diff(np.concatenate(([0], jammed[order].astype(np.int8), [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    return [order[begin:end] for begin, end in zip(starts, ends)]


def largest_cluster(x: np.ndarray, v: np.ndarray, length_cells: int, vehicle_length: int, threshold: int) -> Optional[np.ndarray]:
    clusters = jam_clusters(x, v, length_cells, vehicle_length, threshold)
    if not clusters:
        return None
    return max(clusters, key=len)


def _upstream_edges(x: np.ndarray, v: np.ndarray, length_cells: int, vehicle_length: int, threshold: int) -> list[tuple[int, int]]:
    """(cluster size, raw position of the upstream vehicle) for every jam."""
    return [
        (len(cluster), int(x[cluster[0]]))
        for cluster in jam_clusters(x, v, length_cells, vehicle_length, threshold)
    ]


def jam_front_series(
        log: SpaceTimeLog,
        v_threshold: int = DEFAULT_JAM_THRESHOLD,
        max_jump: int = DEFAULT_MAX_FRONT_JUMP
) -> list[tuple[int, int]]:
    """Upstream edge of one tracked jam per step, unwrapped around the ring.

    A segment starts at the largest jam and then follows, step by step, the
    jam whose upstream edge lies nearest the previous front, provided it is
    no more than ``max_jump`` cells away. A step with no such jam ends the
    segment, and a new one starts at that step's largest jam. The longest segment is
    returned (the earliest on ties), so consecutive points are one step
    apart and never more than ``max_jump`` cells apart.
    """
    length = log.length_cells
    half = length // 2
    best: list[tuple[int, int]] = []
    segment: list[tuple[int, int]] = []
    previous_raw = 0

    for k in range(log.n_steps):
        t = int(log.t[k])
        edges = _upstream_edges(log.x[k], log.v[k], length, log.vehicle_length, v_threshold)

        step = None
        if segment:
            shifts = [(raw - previous_raw + half) % length - half for _, raw in edges]
            near = [shift for shift in shifts if abs(shift) <= max_jump]
            if near:
                step = min(near, key=abs)

        if step is not None:
            segment.append((t, segment[-1][1] + step))
            previous_raw = (previous_raw + step) % length
            continue

        if len(segment) > len(best):
            best = segment
        segment = []
        if edges:
            _, previous_raw = max(edges, key=lambda edge: edge[0])
            segment = [(t, previous_raw)]

    if len(segment) > len(best):
        best = segment
    return best



def estimate_wave_speed(series: Sequence[tuple[int, int]], l_cell: float = 1.5) -> WaveSpeedEstimate:
    if len(series) < MIN_FRONT_POINTS:
        raise InsufficientJamSignal(len(series), MIN_FRONT_POINTS)

    t = np.array([point[0] for point in series], dtype=np.float64)
    position = np.array([point[1] for point in series], dtype=np.float64)

    design = np.column_stack([t - t.mean(), np.ones_like(t)])
    coefficients = np.linalg.lstsq(design, position, rcond=None)[0]
    residuals = position - design @ coefficients
    slope = float(coefficients[0])

    return WaveSpeedEstimate(
        speed_kmh=slope * l_cell * KMH_PER_CELL_STEP,
        slope_cells_per_step=slope,
        residual_rms_cells=float(np.sqrt(np.mean(residuals ** 2))),
        points=len(series)
    )


def wave_speed_spread(speeds_by_variant: Mapping[float, Sequence[float]]) -> Optional[float]:
    """max - min of the per-variant mean speeds; variants without any estimate are skipped."""
    means = [sum(speeds) / len(speeds) for speeds in speeds_by_variant.values() if speeds]
    if not means:
        logger.warning("no variant produced a wave-speed estimate")
        return None
    return max(means) - min(means)
