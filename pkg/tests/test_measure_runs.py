import numpy as np
import pytest

from errors import WindowError
from measure.models import RunConfig
from measure.runs import fd_sweep, measure_point, occupancy_raster, record_run
from rules.common import ModelTag


@pytest.fixture
def short_run() -> RunConfig:
    return RunConfig(length_cells=1000, steps=300, warmup=100, seeds=(1, 2))


def test_single_record_window(default_params):
    run = RunConfig(length_cells=100, steps=10, warmup=0, seeds=(1,))
    log = record_run(ModelTag.DTGBLM, 5, 1, run, (0, 1), default_params)
    assert len(log) == 1
    assert log.window == (0, 1)
    record, = log.records()
    assert (record.t, record.veh, record.x, record.v, record.s) == (0, 0, 0, 0, 0)


def test_window_excludes_end(default_params, short_run):
    log = record_run(ModelTag.DBBLM, 30, 1, short_run, (250, 300), default_params)
    assert log.t.tolist() == list(range(250, 300))
    assert log.x.shape == (50, 45)
    assert len(log) == 50 * 45


def test_recording_is_deterministic(default_params, short_run):
    first = record_run(ModelTag.DBBLM, 40, 7, short_run, (200, 300), default_params)
    again = record_run(ModelTag.DBBLM, 40, 7, short_run, (200, 300), default_params)
    np.testing.assert_array_equal(first.x, again.x)
    np.testing.assert_array_equal(first.v, again.v)
    np.testing.assert_array_equal(first.s, again.s)
    np.testing.assert_array_equal(first.i_class, again.i_class)


@pytest.mark.parametrize("window", [(5, 5), (10, 3), (-1, 3), (0, 301)])
def test_bad_windows(default_params, short_run, window):
    with pytest.raises(WindowError):
        record_run(ModelTag.DTGBLM, 20, 1, short_run, window, default_params)


def test_empty_road_point(default_params, short_run):
    point = measure_point(ModelTag.DTGBLM, 0, 1, short_run, default_params)
    assert point.density == 0.0
    assert point.space_mean_speed == 0.0
    assert point.flow == 0.0


def test_deterministic_nasch_free_flow(default_params):
    params = default_params.model_copy(update={"p_nasch": 0.0})
    run = RunConfig(length_cells=1000, steps=200, warmup=50, seeds=(1,))
    point, = fd_sweep(ModelTag.NASCH, [10], run, params)
    assert point.density == pytest.approx(10.0)
    assert point.space_mean_speed == pytest.approx(108.0)
    assert point.flow == pytest.approx(10.0 * 20 * 5.4)
    assert point.p_d == 0.0


def test_sweep_is_sorted_and_labelled(default_params, short_run):
    points = fd_sweep(ModelTag.DBBLM, [40, 10], short_run, default_params)
    assert [(round(point.density), point.seed) for point in points] == [(10, 1), (10, 2), (40, 1), (40, 2)]
    assert all(point.model == ModelTag.DBBLM for point in points)
    assert all(point.p_d1 == default_params.p_d1 and point.phi_imp == default_params.phi_imp for point in points)


def test_worker_pool_matches_serial(default_params, short_run):
    serial = fd_sweep(ModelTag.DTGBLM, [10, 30], short_run, default_params)
    pooled = fd_sweep(ModelTag.DTGBLM, [10, 30], short_run, default_params, workers=2)
    assert pooled == serial


def test_occupancy_raster(make_log):
    log = make_log(np.array([[2], [5]]), np.array([[3], [3]]), length=10)
    raster = occupancy_raster(log)
    assert raster.tolist() == [
        [3, 3, 3, -1, -1, -1, -1, -1, 3, 3],
        [-1, 3, 3, 3, 3, 3, -1, -1, -1, -1],
    ]


def test_occupancy_raster_of_empty_road(make_log):
    raster = occupancy_raster(make_log(np.zeros((4, 0)), np.zeros((4, 0)), length=10))
    assert raster.shape == (4, 10)
    assert (raster == -1).all()


@pytest.mark.slow
@pytest.mark.parametrize("model", [ModelTag.DTGBLM, ModelTag.DBBLM])
def test_fundamental_diagram_shape(default_params, model):
    run = RunConfig(length_cells=2500, steps=10000, warmup=5000, seeds=(1, 2, 3, 4, 5))
    points = fd_sweep(model, [10, 30, 45], run, default_params)

    def mean_flow(k):
        flows = [point.flow for point in points if round(point.density) == k]
        return sum(flows) / len(flows)

    assert mean_flow(10) == pytest.approx(10 * default_params.v_max * 5.4, rel=0.05)
    assert mean_flow(45) < mean_flow(30)
