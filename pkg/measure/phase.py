import numpy as np

from errors import InsufficientJamSignal
from measure.models import Phase, PhaseThresholds, SpaceTimeLog
from measure.waves import estimate_wave_speed, jam_front_series, largest_cluster
from road.models import ModelParams


def _longest_run(flags: np.ndarray) -> int:
    longest = current = 0
    for flag in flags:
        current = current + 1 if flag else 0
        longest = max(longest, current)
    return longest


def classify_phase(log: SpaceTimeLog, params: ModelParams, thresholds: PhaseThresholds = PhaseThresholds()) -> Phase:
    """Heuristic traffic-phase label for a space-time window.

    Jammed means v <= v_cri. Cluster persistence is the longest stretch of
    consecutive steps whose largest jammed cluster reaches the size threshold.
    """
    sizes = np.zeros(log.n_steps, dtype=np.int64)
    for k in range(log.n_steps):
        cluster = largest_cluster(log.x[k], log.v[k], log.length_cells, log.vehicle_length, params.v_cri)
        sizes[k] = 0 if cluster is None else len(cluster)

    mean_speed = float(log.v.mean()) if log.v.size else 0.0
    small_jams = _longest_run(sizes >= thresholds.free_cluster_size)
    if mean_speed >= thresholds.free_speed_ratio * params.v_max and small_jams < thresholds.free_persistence:
        return Phase.FREE_FLOW

    if _longest_run(sizes >= thresholds.wide_cluster_size) >= thresholds.wide_persistence:
        try:
            estimate = estimate_wave_speed(jam_front_series(log, params.v_cri, params.v_max), params.l_cell)
        except InsufficientJamSignal:
            return Phase.SYNCHRONIZED
        if estimate.slope_cells_per_step < 0:
            return Phase.WIDE_JAM

    return Phase.SYNCHRONIZED
