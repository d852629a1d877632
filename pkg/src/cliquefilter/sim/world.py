"""Scenes of spherical objects carrying outward-facing surface features."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import rng as rngs


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class OrientedFeature:
    landmark_id: str
    position: np.ndarray
    normal: np.ndarray
    parent_object_id: str


@dataclass(frozen=True)
class SimObject:
    object_id: str
    center: np.ndarray
    radius: float
    features: tuple
    survival_time: float

    @property
    def feature_positions(self) -> np.ndarray:
        return np.array([f.position for f in self.features])

    @property
    def feature_normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.features])

    @property
    def landmark_ids(self) -> tuple:
        return tuple(f.landmark_id for f in self.features)


@dataclass(frozen=True)
class SurvivalConfig:
    """Survival times drawn as ``Uniform(lo, hi) * duration``."""

    lo: float = 0.3
    hi: float = 1.1

    def __post_init__(self):
        if not 0 < self.lo <= self.hi:
            raise ValueError(f"need 0 < lo <= hi, got ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class WorldSpec:
    n_objects: int = 8
    bounds: tuple = ((-4.0, 4.0), (-4.0, 4.0), (-0.3, 0.3))
    radius_range: tuple = (0.25, 0.4)
    feature_count_range: tuple = (15, 25)
    survival: SurvivalConfig = SurvivalConfig()
    # surface-to-path distance window, enforced when a path is supplied
    clearance: float = 0.3
    max_path_distance: float = 0.6
    max_attempts: int = 10000

    def __post_init__(self):
        if self.n_objects < 1:
            raise ValueError("n_objects must be at least 1")
        for lo, hi in self.bounds:
            if not lo < hi:
                raise ValueError(f"empty workspace bounds ({lo}, {hi})")
        lo, hi = self.feature_count_range
        if not 1 <= lo <= hi:
            raise ValueError(f"bad feature count range {self.feature_count_range}")


@dataclass(frozen=True)
class SimScene:
    objects: tuple
    duration: float

    def object(self, object_id: str) -> SimObject:
        for o in self.objects:
            if o.object_id == object_id:
                return o
        raise KeyError(object_id)


def sphere_points(g: np.random.Generator, n: int) -> np.ndarray:
    """``n`` points uniform on the unit sphere."""
    v = g.normal(size=(n, 3))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def generate_world(
    seed: int,
    spec: WorldSpec,
    duration: float,
    path: Optional[np.ndarray] = None,
) -> SimScene:
    """Place ``spec.n_objects`` non-overlapping spheres inside ``spec.bounds``.

    Args:
        seed: run seed; the world uses its own stream.
        spec: object count, workspace, radii, feature counts, survival config.
        duration: simulated duration, scales the survival-time draw.
        path: optional (n, 3) sensor path samples. Each object's surface
            then lies between ``spec.clearance`` and ``spec.max_path_distance``
            from the nearest sample, so the sensor never flies through an
            object but passes close to every one of them.
    """
    g = rngs.stream(seed, rngs.WORLD)
    lo = np.array([b[0] for b in spec.bounds])
    hi = np.array([b[1] for b in spec.bounds])
    path = None if path is None else np.atleast_2d(np.asarray(path, float))
    centers, radii = [], []
    attempts = 0
    while len(centers) < spec.n_objects:
        attempts += 1
        if attempts > spec.max_attempts:
            raise GenerationError(
                f"placed {len(centers)} of {spec.n_objects} objects "
                f"after {spec.max_attempts} attempts"
            )
        r = g.uniform(*spec.radius_range)
        c = g.uniform(lo, hi)
        if any(np.linalg.norm(c - c2) <= r + r2 for c2, r2 in zip(centers, radii)):
            continue
        if path is not None:
            gap = np.min(np.linalg.norm(path - c, axis=1)) - r
            if not spec.clearance < gap <= spec.max_path_distance:
                continue
        centers.append(c)
        radii.append(r)

    n_lo, n_hi = spec.feature_count_range
    objects = []
    for i, (c, r) in enumerate(zip(centers, radii)):
        oid = f"o{i}"
        n = int(g.integers(n_lo, n_hi + 1))
        dirs = sphere_points(g, n)
        feats = tuple(
            OrientedFeature(f"{oid}.{k}", c + r * d, d, oid) for k, d in enumerate(dirs)
        )
        survival = float(g.uniform(spec.survival.lo, spec.survival.hi) * duration)
        objects.append(SimObject(oid, c, float(r), feats, survival))
    return SimScene(tuple(objects), float(duration))
