"""Experiment configuration as flat ``key = value`` text.

Units are part of the key name (``s_max_m``, ``period_s``, ``h_fov_deg``) so
a config file reads unambiguously without a schema. Lists are written as
space-separated values. Blank lines and ``#`` comments are ignored.

Example::

    modality = lidar
    s_max_m = 2.0
    s_obs_m = 0.8
    rho_h = 0.75
    rho_l = 0.1
    variants = IFF JCF JCFR
    runs = 100
"""

from __future__ import annotations

import math
from dataclasses import MISSING, dataclass, field, fields
from typing import Optional

from .filter import ConfigError, check_thresholds
from .priors import Exponential, PiecewiseLinearCDF, PriorError, SurvivalPrior
from .sim.sensors import SensorSpec
from .sim.trajectory import TrajectorySpec
from .sim.world import SurvivalConfig, WorldSpec
from .variants import FilterConfig, Variant


def _kind(k: str, section: str):
    return {"kind": k, "section": section}


@dataclass(frozen=True)
class ExperimentConfig:
    # required
    modality: str = field(metadata=_kind("str", "sensor"))
    s_max_m: float = field(metadata=_kind("float", "sensor"))
    s_obs_m: float = field(metadata=_kind("float", "sensor"))
    rho_h: float = field(metadata=_kind("float", "filters"))
    rho_l: float = field(metadata=_kind("float", "filters"))

    # sensor
    h_fov_deg: float = field(default=45.0, metadata=_kind("float", "sensor"))
    v_fov_deg: float = field(default=30.0, metadata=_kind("float", "sensor"))
    lidar_v_fov_deg: float = field(default=22.5, metadata=_kind("float", "sensor"))
    max_view_angle_deg: float = field(default=60.0, metadata=_kind("float", "sensor"))
    p_false: float = field(default=0.003, metadata=_kind("float", "sensor"))
    detection_lambda_ratio: float = field(default=0.7, metadata=_kind("float", "sensor"))

    # trajectory
    period_s: float = field(default=25.0, metadata=_kind("float", "trajectory"))
    duration_s: float = field(default=400.0, metadata=_kind("float", "trajectory"))
    dt_s: float = field(default=1.0, metadata=_kind("float", "trajectory"))
    amplitude_x_m: tuple = field(default=(2.0, 3.0), metadata=_kind("floats", "trajectory"))
    amplitude_y_m: tuple = field(default=(2.0, 3.0), metadata=_kind("floats", "trajectory"))
    amplitude_z_m: tuple = field(default=(0.0, 0.1), metadata=_kind("floats", "trajectory"))
    max_yaw_offset_deg: float = field(default=45.0, metadata=_kind("float", "trajectory"))

    # world
    n_objects: int = field(default=8, metadata=_kind("int", "world"))
    bounds_x_m: tuple = field(default=(-4.0, 4.0), metadata=_kind("floats", "world"))
    bounds_y_m: tuple = field(default=(-4.0, 4.0), metadata=_kind("floats", "world"))
    bounds_z_m: tuple = field(default=(-0.3, 0.3), metadata=_kind("floats", "world"))
    radius_m: tuple = field(default=(0.25, 0.4), metadata=_kind("floats", "world"))
    features_min: int = field(default=15, metadata=_kind("int", "world"))
    features_max: int = field(default=25, metadata=_kind("int", "world"))
    survival_lo_frac: float = field(default=0.3, metadata=_kind("float", "world"))
    survival_hi_frac: float = field(default=1.1, metadata=_kind("float", "world"))
    clearance_m: float = field(default=0.3, metadata=_kind("float", "world"))
    max_path_distance_m: float = field(default=0.6, metadata=_kind("float", "world"))

    # prior; the exponential median defaults to half the duration
    prior_kind: str = field(default="exponential", metadata=_kind("str", "prior"))
    prior_median_s: Optional[float] = field(default=None, metadata=_kind("float?", "prior"))
    prior_knots: tuple = field(default=(), metadata=_kind("floats", "prior"))

    # filters
    p_miss: float = field(default=0.85, metadata=_kind("float", "filters"))
    delta: float = field(default=0.03, metadata=_kind("float", "filters"))
    variants: tuple = field(
        default=("IFF", "JFF", "JCF", "JCFR"), metadata=_kind("words", "filters")
    )
    no_suppression: tuple = field(default=(), metadata=_kind("words", "filters"))

    # experiment
    runs: int = field(default=100, metadata=_kind("int", "experiment"))
    base_seed: int = field(default=0, metadata=_kind("int", "experiment"))
    out_dir: str = field(default="out", metadata=_kind("str", "experiment"))

    # -- component builders ------------------------------------------------

    def sensor(self) -> SensorSpec:
        return SensorSpec(
            modality=self.modality,
            s_max=self.s_max_m,
            s_obs=self.s_obs_m,
            h_fov=math.radians(self.h_fov_deg),
            v_fov=math.radians(self.v_fov_deg),
            lidar_v_fov=math.radians(self.lidar_v_fov_deg),
            max_view_angle=math.radians(self.max_view_angle_deg),
            p_false=self.p_false,
            detection_lambda_ratio=self.detection_lambda_ratio,
        )

    def trajectory(self) -> TrajectorySpec:
        return TrajectorySpec(
            period=self.period_s,
            duration=self.duration_s,
            dt=self.dt_s,
            seed=self.base_seed,
            amplitude_bounds=(self.amplitude_x_m, self.amplitude_y_m, self.amplitude_z_m),
            max_yaw_offset=math.radians(self.max_yaw_offset_deg),
        )

    def world(self) -> WorldSpec:
        return WorldSpec(
            n_objects=self.n_objects,
            bounds=(self.bounds_x_m, self.bounds_y_m, self.bounds_z_m),
            radius_range=self.radius_m,
            feature_count_range=(self.features_min, self.features_max),
            survival=SurvivalConfig(self.survival_lo_frac, self.survival_hi_frac),
            clearance=self.clearance_m,
            max_path_distance=self.max_path_distance_m,
        )

    def prior(self) -> SurvivalPrior:
        if self.prior_kind == "exponential":
            median = self.prior_median_s
            return Exponential.from_median(self.duration_s / 2 if median is None else median)
        if self.prior_kind == "piecewise":
            k = self.prior_knots
            if len(k) % 2:
                raise PriorError("prior_knots needs (time, probability) pairs")
            return PiecewiseLinearCDF(tuple(zip(k[0::2], k[1::2])))
        raise PriorError(f"unknown prior_kind {self.prior_kind!r}")

    def filter_configs(self, suppression: Optional[bool] = None) -> dict:
        """Variant name -> FilterConfig, in the configured order.

        ``suppression`` overrides the per-variant setting for every variant.
        """
        prior = self.prior()
        out = {}
        for v in self.variants:
            on = v not in self.no_suppression if suppression is None else suppression
            out[v] = FilterConfig(
                prior,
                p_false=self.p_false,
                p_miss=self.p_miss,
                s_max=self.s_max_m,
                s_obs=self.s_obs_m,
                rho_h=self.rho_h,
                rho_l=self.rho_l,
                delta=self.delta,
                suppression=on,
            )
        return out

    def validate(self) -> None:
        """Build every component once; any invariant violation is a ConfigError."""
        check_thresholds(self.rho_h, self.rho_l)
        if not self.variants:
            raise ConfigError("variants: at least one filter variant is required")
        for v in self.variants + self.no_suppression:
            if v not in Variant.__members__:
                raise ConfigError(f"unknown filter variant {v!r}")
        if len(set(self.variants)) != len(self.variants):
            raise ConfigError("variants: duplicate entries")
        if self.runs < 1:
            raise ConfigError("runs must be at least 1")
        if not self.out_dir:
            raise ConfigError("out_dir must not be empty")
        for name in ("amplitude_x_m", "amplitude_y_m", "amplitude_z_m", "bounds_x_m",
                     "bounds_y_m", "bounds_z_m", "radius_m"):
            if len(getattr(self, name)) != 2:
                raise ConfigError(f"{name}: expected two values (min max)")
        try:
            self.sensor()
            self.trajectory()
            self.world()
            self.filter_configs()
        except (ValueError, PriorError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError(str(e)) from e


def lidar_default() -> ExperimentConfig:
    return ExperimentConfig(modality="lidar", s_max_m=2.0, s_obs_m=0.8, rho_h=0.75, rho_l=0.1)


# -- text format -----------------------------------------------------------


def _parse_value(kind: str, raw: str):
    if kind == "str":
        return raw
    if kind == "int":
        return int(raw)
    if kind in ("float", "float?"):
        x = float(raw)
        if not math.isfinite(x):
            raise ValueError("not a finite number")
        return x
    if kind == "floats":
        return tuple(float(x) for x in raw.split())
    if kind == "words":
        return tuple(raw.split())
    raise AssertionError(kind)


def _format_value(kind: str, value) -> str:
    if kind in ("float", "float?"):
        return repr(float(value))
    if kind == "floats":
        return " ".join(repr(float(x)) for x in value)
    if kind == "words":
        return " ".join(value)
    return str(value)


_FIELDS = {f.name: f for f in fields(ExperimentConfig)}


def parse_config(text: str, source: str = "<config>") -> ExperimentConfig:
    """Parse and validate a config; errors name the file, line and field."""
    values, lines = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        where = f"{source}, line {lineno}"
        if not sep:
            raise ConfigError(f"{where}: expected 'key = value'")
        if key not in _FIELDS:
            raise ConfigError(f"{where}: unknown field {key!r}")
        if key in values:
            raise ConfigError(f"{where}: field {key!r} given twice (first on line {lines[key]})")
        try:
            values[key] = _parse_value(_FIELDS[key].metadata["kind"], raw)
        except ValueError as e:
            raise ConfigError(f"{where}: field {key!r}: bad value {raw!r} ({e})") from None
        lines[key] = lineno
    missing = [
        n for n, f in _FIELDS.items()
        if f.default is MISSING and f.default_factory is MISSING and n not in values
    ]
    if missing:
        raise ConfigError(f"{source}: missing required field {missing[0]!r}")
    cfg = ExperimentConfig(**values)
    try:
        cfg.validate()
    except ConfigError as e:
        raise ConfigError(f"{source}: {e}") from None
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ConfigError(f"{path}: cannot read config ({e.strerror})") from None
    return parse_config(text, source=str(path))


_SECTIONS = ("sensor", "trajectory", "world", "prior", "filters", "experiment")


def format_config(cfg: ExperimentConfig) -> str:
    blocks = []
    for section in _SECTIONS:
        out = [f"# {section}"]
        for f in fields(cfg):
            value = getattr(cfg, f.name)
            if f.metadata["section"] != section or value is None:
                continue
            out.append(f"{f.name} = {_format_value(f.metadata['kind'], value)}".rstrip())
        blocks.append("\n".join(out))
    return "\n\n".join(blocks) + "\n"
