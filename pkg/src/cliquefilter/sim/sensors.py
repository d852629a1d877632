"""Camera and lidar visibility plus detection sampling."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .geometry import Pose
from .world import SimObject, SimScene


class Modality(enum.Enum):
    CAMERA = "camera"
    LIDAR = "lidar"


@dataclass(frozen=True)
class SensorSpec:
    modality: Modality = Modality.LIDAR
    s_max: float = 2.0
    s_obs: float = 0.8
    # camera frustum half-angles
    h_fov: float = np.deg2rad(45.0)
    v_fov: float = np.deg2rad(30.0)
    # lidar half-angle above and below the sensor xy-plane
    lidar_v_fov: float = np.deg2rad(22.5)
    max_view_angle: float = np.deg2rad(60.0)
    p_false: float = 0.003
    detection_lambda_ratio: float = 0.7

    def __post_init__(self):
        object.__setattr__(self, "modality", Modality(self.modality))
        if not 0 < self.s_obs <= self.s_max:
            raise ValueError(f"need 0 < s_obs <= s_max, got {self.s_obs}, {self.s_max}")
        for name in ("h_fov", "v_fov", "lidar_v_fov", "max_view_angle"):
            a = getattr(self, name)
            if not 0 < a <= np.pi / 2:
                raise ValueError(f"{name} must be in (0, pi/2], got {a}")
        if not 0 <= self.p_false < 1:
            raise ValueError(f"p_false must be in [0, 1), got {self.p_false}")
        if not self.detection_lambda_ratio > 0:
            raise ValueError("detection_lambda_ratio must be positive")

    @property
    def detection_lambda(self) -> float:
        return self.detection_lambda_ratio * self.s_max


def detection_probability(distance, sensor: SensorSpec):
    """Chance that an existing, well-oriented feature is detected at ``distance``.

    Decays as ``exp(-d / lambda)`` with ``lambda = ratio * s_max``.
    """
    return np.exp(-np.asarray(distance, dtype=float) / sensor.detection_lambda)


def in_sensor_fov(local: np.ndarray, sensor: SensorSpec) -> np.ndarray:
    """Modality geometry test on sensor-frame points (n, 3); ignores range."""
    x, y, z = local[:, 0], local[:, 1], local[:, 2]
    if sensor.modality is Modality.CAMERA:
        front = x > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            return (
                front
                & (np.abs(y) <= x * np.tan(sensor.h_fov))
                & (np.abs(z) <= x * np.tan(sensor.v_fov))
            )
    horiz = np.hypot(x, y)
    return np.abs(z) <= horiz * np.tan(sensor.lidar_v_fov)


@dataclass(frozen=True)
class CliqueView:
    """Geometry of one clique from one pose; arrays are per feature."""

    object_id: str
    landmark_ids: tuple
    distance: np.ndarray
    candidate: np.ndarray
    within_view_angle: np.ndarray
    persisting: bool

    @property
    def any_candidate(self) -> bool:
        return bool(self.candidate.any())


def view_clique(pose: Pose, sensor: SensorSpec, obj: SimObject, t: float) -> CliqueView:
    pts = obj.feature_positions
    to_sensor = pose.position - pts
    dist = np.linalg.norm(to_sensor, axis=1)
    local = pose.to_sensor_frame(pts)
    candidate = (dist <= sensor.s_max) & in_sensor_fov(local, sensor)
    with np.errstate(divide="ignore", invalid="ignore"):
        cos_angle = np.einsum("ij,ij->i", obj.feature_normals, to_sensor) / dist
    within = cos_angle >= np.cos(sensor.max_view_angle)
    return CliqueView(
        obj.object_id,
        obj.landmark_ids,
        dist,
        candidate,
        within,
        persisting=bool(t <= obj.survival_time),
    )


def expected_observable(pose: Pose, sensor: SensorSpec, scene: SimScene, t: float) -> dict:
    """Views of every clique with at least one detection candidate, keyed by object id."""
    views = {}
    for obj in scene.objects:
        v = view_clique(pose, sensor, obj, t)
        if v.any_candidate:
            views[obj.object_id] = v
    return views


def sample_detections(
    rng: np.random.Generator, view: CliqueView, sensor: SensorSpec
) -> np.ndarray:
    """Binary detections for every feature in ``view`` (0 for non-candidates).

    One uniform is drawn per feature whether or not it is a candidate, so a
    clique's random stream advances identically regardless of geometry.
    """
    u = rng.random(len(view.landmark_ids))
    if view.persisting:
        p = np.where(
            view.within_view_angle,
            detection_probability(view.distance, sensor),
            sensor.p_false,
        )
    else:
        p = np.full(len(u), sensor.p_false)
    return ((u < p) & view.candidate).astype(np.int8)
