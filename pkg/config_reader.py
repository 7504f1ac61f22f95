import logging
from pathlib import Path
from typing import Literal, Optional

from dotenv.parser import parse_stream
from pydantic import Field, ValidationError, model_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict, SettingsError

from errors import ConfigError
from measure.models import PhaseThresholds, RunConfig
from road.models import InitialSpeed, ModelParams, Placement, Probability
from rules.common import ModelTag

logger = logging.getLogger(__name__)


def _density_grid() -> list[float]:
    return [float(k) for k in range(2, 82, 2)]


class ExperimentConfig(BaseSettings, ModelParams):
    """One experiment, read from a flat KEY=VALUE file.

    Every ModelParams field is a top-level key; list values are JSON arrays.
    """

    model: ModelTag = ModelTag.DTGBLM
    models: Optional[list[ModelTag]] = None

    length_cells: int = Field(default=2500, ge=1)
    steps: int = Field(default=10000, ge=1)
    warmup: int = Field(default=5000, ge=0)
    placement: Placement = Placement.UNIFORM
    v_init: InitialSpeed = InitialSpeed.ZERO

    densities: list[float] = Field(default_factory=_density_grid)
    density: float = Field(default=50.0, ge=0)
    p_d_variants: list[Probability] = Field(default_factory=lambda: [0.01, 0.1, 0.3])
    # probability the variant list replaces; None means the model's dawdling probability
    variant_field: Optional[Literal["p_nasch", "p_b", "p_0", "p_d", "p_d1", "p_d2"]] = None
    seeds: list[int] = Field(default_factory=lambda: [1, 2, 3, 4, 5])
    window: tuple[int, int] = (9500, 10000)

    jam_threshold: Optional[int] = Field(default=None, ge=0)
    min_wave_density: float = Field(default=36.0, ge=0)
    free_speed_ratio: float = Field(default=0.9, ge=0, le=1)
    free_cluster_size: int = Field(default=3, ge=1)
    free_persistence: int = Field(default=10, ge=1)
    wide_cluster_size: int = Field(default=5, ge=1)
    wide_persistence: int = Field(default=100, ge=1)

    output_dir: Path = Path("results")
    workers: int = Field(default=1, ge=1)

    model_config = SettingsConfigDict(extra="forbid", case_sensitive=False, env_file_encoding="utf-8", frozen=True)

    @classmethod
    def settings_customise_sources(
            cls,
            settings_cls: type[BaseSettings],
            init_settings: PydanticBaseSettingsSource,
            env_settings: PydanticBaseSettingsSource,
            dotenv_settings: PydanticBaseSettingsSource,
            file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # the config file is the only input; the process environment is ignored
        return init_settings, dotenv_settings

    @model_validator(mode="after")
    def check_run(self) -> "ExperimentConfig":
        if self.warmup >= self.steps:
            raise ValueError(f"warmup ({self.warmup}) must be smaller than steps ({self.steps})")

        jam_density = self.jam_density
        for k in [*self.densities, self.density]:
            if not 0 <= k <= jam_density:
                raise ValueError(f"density {k} veh/km not feasible, must lie in [0, {jam_density:.4f}]")

        t_start, t_end = self.window
        if not 0 <= t_start < t_end <= self.steps:
            raise ValueError(f"window [{t_start}, {t_end}) must satisfy 0 <= start < end <= steps ({self.steps})")

        if not self.seeds:
            raise ValueError("at least one seed is required")
        if any(seed < 0 for seed in self.seeds):
            raise ValueError("seeds must be non-negative")
        return self

    @property
    def params(self) -> ModelParams:
        return ModelParams(**{name: getattr(self, name) for name in ModelParams.model_fields})

    @property
    def run(self) -> RunConfig:
        return RunConfig(
            length_cells=self.length_cells,
            steps=self.steps,
            warmup=self.warmup,
            seeds=tuple(self.seeds),
            placement=self.placement,
            v_init=self.v_init
        )

    @property
    def thresholds(self) -> PhaseThresholds:
        return PhaseThresholds(**{name: getattr(self, name) for name in PhaseThresholds.model_fields})

    @property
    def model_tags(self) -> list[ModelTag]:
        return self.models or [self.model]

    @property
    def jam_speed(self) -> int:
        return self.v_cri if self.jam_threshold is None else self.jam_threshold

    def resolved(self) -> list[str]:
        """KEY=VALUE lines of every field, as the run will see them."""
        lines = []
        for name, value in self.model_dump(mode="json").items():
            lines.append(f"{name.upper()}={value}")
        return lines


def _check_file(path: Path) -> None:
    known = {name.lower() for name in ExperimentConfig.model_fields}
    with path.open(encoding="utf-8") as stream:
        for binding in parse_stream(stream):
            line = binding.original.line
            if binding.error:
                statement = binding.original.string.strip()
                raise ConfigError(f"{path}: line {line}: cannot parse statement {statement!r}")
            if binding.key is not None and binding.key.lower() not in known:
                raise ConfigError(f"{path}: line {line}: unknown key {binding.key.lower()!r}")
            if binding.key is not None and not binding.value:
                raise ConfigError(f"{path}: line {line}: key {binding.key.lower()!r} has no value")


def _describe(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        field = ".".join(str(part) for part in item["loc"]) or "config"
        if item["type"] == "extra_forbidden":
            problems.append(f"unknown key {field!r}")
        else:
            problems.append(f"{field}: {item['msg']}")
    return "; ".join(problems)


def load_config(path: Path) -> ExperimentConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")

    _check_file(path)
    try:
        config = ExperimentConfig(_env_file=path)
    except SettingsError as error:
        raise ConfigError(f"{path}: {error}") from error
    except ValidationError as error:
        raise ConfigError(f"{path}: {_describe(error)}") from error

    logger.info("loaded %s config from %s", config.model.value, path)
    return config
