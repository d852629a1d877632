"""JSON scene dumps for inspection and replay."""

from __future__ import annotations

import json
from typing import TextIO

import numpy as np

from .world import OrientedFeature, SimObject, SimScene


def scene_to_dict(scene: SimScene) -> dict:
    return {
        "duration": scene.duration,
        "objects": [
            {
                "id": o.object_id,
                "center": o.center.tolist(),
                "radius": o.radius,
                "survival_time": o.survival_time,
                "features": [
                    {"id": f.landmark_id, "position": f.position.tolist(), "normal": f.normal.tolist()}
                    for f in o.features
                ],
            }
            for o in scene.objects
        ],
    }


def scene_from_dict(d: dict) -> SimScene:
    objects = []
    for o in d["objects"]:
        feats = tuple(
            OrientedFeature(f["id"], np.array(f["position"]), np.array(f["normal"]), o["id"])
            for f in o["features"]
        )
        objects.append(
            SimObject(o["id"], np.array(o["center"]), float(o["radius"]), feats,
                      float(o["survival_time"]))
        )
    return SimScene(tuple(objects), float(d["duration"]))


def dump_scene(scene: SimScene, fh: TextIO) -> None:
    json.dump(scene_to_dict(scene), fh, indent=1)
    fh.write("\n")


def load_scene(fh: TextIO) -> SimScene:
    return scene_from_dict(json.load(fh))
