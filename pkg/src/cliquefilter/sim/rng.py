"""Seeded random streams for the simulator.

Every subsystem draws from its own PCG64 stream derived from the run seed
through ``numpy.random.SeedSequence`` spawn keys, so e.g. changing the
number of objects leaves the trajectory untouched, and each object's
detection draws are independent of every other object's.
"""

from __future__ import annotations

import numpy as np

WORLD = 0
TRAJECTORY = 1
DETECTIONS = 2


def stream(seed: int, subsystem: int, *index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(subsystem, *index))
    return np.random.Generator(np.random.PCG64(ss))
