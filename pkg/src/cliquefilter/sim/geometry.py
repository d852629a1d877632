from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def yaw_quaternion(yaw: float) -> np.ndarray:
    """Unit quaternion ``(w, x, y, z)`` for a rotation of ``yaw`` about +z."""
    return np.array([np.cos(yaw / 2), 0.0, 0.0, np.sin(yaw / 2)])


def quaternion_to_matrix(q) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )


@dataclass(frozen=True)
class Pose:
    """Sensor pose; ``orientation`` maps sensor-frame vectors to the world frame."""

    position: np.ndarray
    orientation: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.orientation, dtype=float)
        if q.shape != (4,) or abs(np.linalg.norm(q) - 1.0) > 1e-9:
            raise ValueError(f"orientation must be a unit quaternion, got {q}")
        object.__setattr__(self, "orientation", q)
        object.__setattr__(self, "position", np.asarray(self.position, dtype=float))

    @property
    def rotation(self) -> np.ndarray:
        return quaternion_to_matrix(self.orientation)

    def to_sensor_frame(self, points: np.ndarray) -> np.ndarray:
        """World points (n, 3) expressed in the sensor frame."""
        return (np.asarray(points) - self.position) @ self.rotation


def unit(v: np.ndarray, axis: int = -1) -> np.ndarray:
    return v / np.linalg.norm(v, axis=axis, keepdims=True)
