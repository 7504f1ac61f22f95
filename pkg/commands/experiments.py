import logging
from pathlib import Path
from typing import Optional

from commands.csv_output import FD_HEADER, SPACETIME_HEADER, WAVE_HEADER, decimal, probability, write_rows
from config_reader import ExperimentConfig
from errors import ConfigError, InsufficientJamSignal
from measure.models import FdPoint
from measure.runs import fd_sweep, occupancy_raster, record_run
from measure.summary import compare_flows
from measure.waves import estimate_wave_speed, jam_front_series, wave_speed_spread
from road.models import ModelParams
from rules.common import ModelTag

logger = logging.getLogger(__name__)

DAWDLE_FIELDS = {ModelTag.NASCH: "p_nasch", ModelTag.DTGBLM: "p_d", ModelTag.DBBLM: "p_d2"}


def variant_field(model: ModelTag, field: Optional[str] = None) -> str:
    return field or DAWDLE_FIELDS[model]


def variant_params(model: ModelTag, params: ModelParams, value: float, field: Optional[str] = None) -> ModelParams:
    """Parameters with one swept probability replaced; the model's dawdling probability unless ``field`` is given."""
    return params.model_copy(update={variant_field(model, field): value})


def _reported_in_fd(model: ModelTag, field: str) -> bool:
    dawdle_column = "p_nasch" if model == ModelTag.NASCH else "p_d"
    return field in (dawdle_column, "p_d1", "p_d2")


def _variants(config: ExperimentConfig) -> list[float]:
    if not config.p_d_variants:
        raise ConfigError("p_d_variants is empty")
    return sorted(set(config.p_d_variants))


def _fd_row(point: FdPoint) -> list[str]:
    return [
        point.model.value,
        probability(point.p_d),
        probability(point.p_d1),
        probability(point.p_d2),
        probability(point.phi_imp),
        str(point.seed),
        decimal(point.density),
        decimal(point.flow),
        decimal(point.space_mean_speed),
    ]


def cmd_fd(config: ExperimentConfig, out_dir: Path) -> Path:
    if not config.densities:
        raise ConfigError("density list is empty")

    field = config.variant_field
    # a swept probability without its own fd.csv column goes to a separate file with one extra column
    extra = field is not None and not all(_reported_in_fd(model, field) for model in config.model_tags)

    rows = []
    sweeps: dict[ModelTag, list[FdPoint]] = {}
    for model in config.model_tags:
        for variant in _variants(config):
            params = variant_params(model, config.params, variant, field)
            points = fd_sweep(model, config.densities, config.run, params, config.workers)
            sweeps.setdefault(model, []).extend(points)
            for point in points:
                rows.append([*_fd_row(point), probability(variant)] if extra else _fd_row(point))

    baseline, *others = config.model_tags
    for model in others:
        for density, difference in compare_flows(sweeps[baseline], sweeps[model]):
            logger.info("k=%.4f veh/km: %s - %s flow = %.4f veh/h", density, model.value, baseline.value, difference)

    if extra:
        return write_rows(out_dir / f"fd_{field}.csv", (*FD_HEADER, field), rows)
    return write_rows(out_dir / "fd.csv", FD_HEADER, rows)


def _window_log(config: ExperimentConfig):
    return record_run(config.model, config.density, config.seeds[0], config.run, config.window, config.params)


def cmd_spacetime(config: ExperimentConfig, out_dir: Path) -> Path:
    log = _window_log(config)
    rows = ([record.t, record.veh, record.x, record.v, record.s, record.i] for record in log.records())
    return write_rows(out_dir / "spacetime.csv", SPACETIME_HEADER, rows)


def cmd_raster(config: ExperimentConfig, out_dir: Path) -> Path:
    log = _window_log(config)
    raster = occupancy_raster(log)
    header = ["t", *(str(cell) for cell in range(log.length_cells))]
    rows = ([int(t), *row.tolist()] for t, row in zip(log.t, raster))
    return write_rows(out_dir / "raster.csv", header, rows)


def cmd_wave(config: ExperimentConfig, out_dir: Path) -> Path:
    if config.density < config.min_wave_density:
        raise ConfigError(
            f"density {config.density} veh/km is below min_wave_density {config.min_wave_density}; no jams to track"
        )

    rows = []
    for model in config.model_tags:
        speeds_by_variant: dict[float, list[float]] = {}
        for variant in _variants(config):
            params = variant_params(model, config.params, variant, config.variant_field)
            speeds = speeds_by_variant.setdefault(variant, [])
            for seed in config.seeds:
                log = record_run(model, config.density, seed, config.run, config.window, params)
                series = jam_front_series(log, config.jam_speed, params.v_max)
                try:
                    estimate = estimate_wave_speed(series, params.l_cell)
                except InsufficientJamSignal as error:
                    logger.warning(
                        "%s %s=%s seed=%d: %s",
                        model.value, variant_field(model, config.variant_field), probability(variant), seed, error
                    )
                    rows.append([model.value, probability(variant), str(seed), "", "", str(len(series))])
                    continue

                speeds.append(estimate.speed_kmh)
                rows.append([
                    model.value,
                    probability(variant),
                    str(seed),
                    decimal(estimate.speed_kmh),
                    decimal(estimate.residual_rms_cells),
                    str(estimate.points),
                ])

        spread = wave_speed_spread(speeds_by_variant)
        contributing = sum(1 for speeds in speeds_by_variant.values() if speeds)
        logger.info("%s wave-speed spread across variants: %s km/h", model.value, decimal(spread) or "n/a")
        rows.append([model.value, "spread", "", decimal(spread), "", str(contributing)])

    return write_rows(out_dir / "wave.csv", WAVE_HEADER, rows)
