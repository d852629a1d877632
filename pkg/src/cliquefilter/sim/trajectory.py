"""Periodic sensor trajectories.

Each axis is a two-harmonic sum of sinusoids sharing one period, so the path
closes on itself and revisits the same objects every period. The sensor's
forward (local x) axis follows the horizontal velocity heading plus a
constant, seed-drawn yaw offset: the sensor does not look where it goes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng as rngs
from .geometry import Pose, yaw_quaternion

HARMONICS = (1, 2)


@dataclass(frozen=True)
class TrajectorySpec:
    period: float = 25.0
    duration: float = 400.0
    dt: float = 1.0
    seed: int = 0
    # (min, max) total excursion from ``center`` per axis
    amplitude_bounds: tuple = ((2.0, 3.0), (2.0, 3.0), (0.0, 0.1))
    center: tuple = (0.0, 0.0, 0.0)
    max_yaw_offset: float = np.pi / 4

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if not self.period > 0 or self.duration < 2 * self.period:
            raise ValueError("duration must cover at least two full periods")
        if len(self.amplitude_bounds) != 3:
            raise ValueError("amplitude_bounds needs one (min, max) pair per axis")
        for lo, hi in self.amplitude_bounds:
            if not 0 <= lo <= hi:
                raise ValueError(f"bad amplitude bounds ({lo}, {hi})")

    @property
    def times(self) -> np.ndarray:
        n = int(round(self.duration / self.dt))
        return self.dt * np.arange(1, n + 1)


@dataclass(frozen=True)
class Trajectory:
    spec: TrajectorySpec
    amplitudes: np.ndarray  # (3, n_harmonics)
    phases: np.ndarray  # (3, n_harmonics)
    yaw_offset: float
    center: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def _omega(self) -> np.ndarray:
        return 2 * np.pi * np.asarray(HARMONICS) / self.spec.period

    def position(self, t) -> np.ndarray:
        """Positions at time(s) ``t``; shape ``(..., 3)``."""
        t = np.asarray(t, dtype=float)[..., None, None]
        arg = self._omega() * t + self.phases
        return self.center + (self.amplitudes * np.sin(arg)).sum(axis=-1)

    def velocity(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None, None]
        w = self._omega()
        arg = w * t + self.phases
        return (self.amplitudes * w * np.cos(arg)).sum(axis=-1)

    def pose(self, t: float) -> Pose:
        v = self.velocity(t)
        heading = np.arctan2(v[1], v[0])
        return Pose(self.position(t), yaw_quaternion(heading + self.yaw_offset))

    def samples(self) -> list:
        """``[(t, Pose)]`` at every simulation step."""
        return [(float(t), self.pose(t)) for t in self.spec.times]


def generate_trajectory(spec: TrajectorySpec) -> Trajectory:
    g = rngs.stream(spec.seed, rngs.TRAJECTORY)
    n_h = len(HARMONICS)
    amplitudes = np.empty((3, n_h))
    for axis, (lo, hi) in enumerate(spec.amplitude_bounds):
        total = g.uniform(lo, hi)
        w = g.uniform(0.2, 0.8)
        amplitudes[axis] = total * np.array([w, 1 - w])
    phases = g.uniform(0, 2 * np.pi, size=(3, n_h))
    yaw_offset = g.uniform(-spec.max_yaw_offset, spec.max_yaw_offset)
    return Trajectory(spec, amplitudes, phases, float(yaw_offset), np.asarray(spec.center, float))
