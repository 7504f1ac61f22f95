import numpy as np
import pytest

from measure.models import Phase, PhaseThresholds, RunConfig
from measure.phase import classify_phase
from measure.runs import record_run
from rules.common import ModelTag


def _queue(make_log, steps, front_speed, length=1000):
    """Nine stopped vehicles whose upstream end moves ``front_speed`` cells per step, one free vehicle."""
    t = np.arange(steps)[:, None]
    front = 100 + front_speed * t
    x = np.hstack([front + 6 * np.arange(9), front + 500]) % length
    v = np.hstack([np.zeros((steps, 9)), np.full((steps, 1), 20)])
    return make_log(x, v, length=length)


def test_free_flow(make_log, default_params):
    steps = 200
    x = (np.arange(steps)[:, None] * 20 + 100 * np.arange(10)) % 1000
    log = make_log(x, np.full((steps, 10), 20), length=1000)
    assert classify_phase(log, default_params) == Phase.FREE_FLOW


def test_slow_moving_traffic_is_synchronized(make_log, default_params):
    steps = 200
    x = (np.arange(steps)[:, None] * 6 + 10 * np.arange(10)) % 1000
    log = make_log(x, np.full((steps, 10), 6), length=1000)
    assert classify_phase(log, default_params) == Phase.SYNCHRONIZED


def test_backward_moving_jam_is_wide(make_log, default_params):
    log = _queue(make_log, 120, -1)
    assert classify_phase(log, default_params) == Phase.WIDE_JAM


def test_forward_moving_cluster_is_not_wide(make_log, default_params):
    log = _queue(make_log, 120, 1)
    assert classify_phase(log, default_params) == Phase.SYNCHRONIZED


def test_short_lived_jam_is_not_wide(make_log, default_params):
    log = _queue(make_log, 120, -1)
    assert classify_phase(log, default_params, PhaseThresholds(wide_persistence=200)) == Phase.SYNCHRONIZED


@pytest.mark.slow
def test_dense_dtgblm_is_congested(default_params):
    run = RunConfig(length_cells=2500, steps=3000, warmup=2000, seeds=(1,))
    log = record_run(ModelTag.DTGBLM, 30, 1, run, (2500, 3000), default_params)
    assert classify_phase(log, default_params) != Phase.FREE_FLOW
