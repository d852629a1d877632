from __future__ import annotations

from dataclasses import dataclass, replace

from ..records import CliqueObservation
from . import rng as rngs
from .sensors import SensorSpec, sample_detections, view_clique
from .trajectory import Trajectory, TrajectorySpec, generate_trajectory
from .world import SimScene, WorldSpec, generate_world


@dataclass(frozen=True)
class Simulation:
    seed: int
    scene: SimScene
    trajectory: Trajectory
    observations: tuple  # CliqueObservation, ordered by (time, object)

    def steps_per_clique(self) -> dict:
        counts = {o.object_id: 0 for o in self.scene.objects}
        for obs in self.observations:
            counts[obs.clique_id] += 1
        return counts


def simulate(
    seed: int, world: WorldSpec, trajectory: TrajectorySpec, sensor: SensorSpec
) -> Simulation:
    """Generate a scene and trajectory for ``seed`` and sample every detection."""
    traj = generate_trajectory(replace(trajectory, seed=seed))
    times = traj.spec.times
    path = traj.position(times)
    scene = generate_world(seed, world, traj.spec.duration, path=path)
    det_rngs = [rngs.stream(seed, rngs.DETECTIONS, i) for i in range(len(scene.objects))]
    observations = []
    for t in times:
        t = float(t)
        pose = traj.pose(t)
        for obj, g in zip(scene.objects, det_rngs):
            view = view_clique(pose, sensor, obj, t)
            detected = sample_detections(g, view, sensor)
            if view.any_candidate:
                observations.append(
                    CliqueObservation(
                        t,
                        obj.object_id,
                        view.landmark_ids,
                        view.candidate,
                        detected,
                        view.distance,
                    )
                )
    return Simulation(seed, scene, traj, tuple(observations))

