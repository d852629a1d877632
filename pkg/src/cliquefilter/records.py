"""Per-step clique observations and the tab-separated detection log.

A detection log holds one row per clique member at every step where the
clique has at least one detection candidate::

    t  clique  landmark  candidate  detected  distance

That is everything a filter needs, so logs can be replayed offline without
the simulator. Floats are written with 17 significant digits so a parsed log
reproduces the original values exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, TextIO

import numpy as np

LOG_HEADER = "t\tclique\tlandmark\tcandidate\tdetected\tdistance"


class LogFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class CliqueObservation:
    """All members of one clique at one step."""

    time: float
    clique_id: str
    landmark_ids: tuple
    candidate: np.ndarray
    detected: np.ndarray
    distance: np.ndarray

    @property
    def n_positive(self) -> int:
        return int(self.detected.sum())


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def write_log(observations: Iterable[CliqueObservation], fh: TextIO) -> None:
    fh.write(LOG_HEADER + "\n")
    for obs in observations:
        t = fmt_float(obs.time)
        for lid, c, d, s in zip(obs.landmark_ids, obs.candidate, obs.detected, obs.distance):
            fh.write(f"{t}\t{obs.clique_id}\t{lid}\t{int(c)}\t{int(d)}\t{fmt_float(s)}\n")


def _flush(t, clique, rows) -> CliqueObservation:
    ids, cand, det, dist = zip(*rows)
    return CliqueObservation(
        t,
        clique,
        tuple(ids),
        np.array(cand, dtype=bool),
        np.array(det, dtype=np.int8),
        np.array(dist, dtype=float),
    )


def read_log(fh: TextIO) -> Iterator[CliqueObservation]:
    """Parse a detection log back into observations, in file order."""
    key, rows = None, []
    header_seen = False
    for lineno, line in enumerate(fh, start=1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != LOG_HEADER:
                raise LogFormatError(lineno, f"expected header {LOG_HEADER!r}")
            header_seen = True
            continue
        parts = line.split("\t")
        if len(parts) != 6:
            raise LogFormatError(lineno, f"expected 6 fields, got {len(parts)}")
        try:
            t = float(parts[0])
            cand, det = int(parts[3]), int(parts[4])
            dist = float(parts[5])
        except ValueError as e:
            raise LogFormatError(lineno, str(e)) from None
        if cand not in (0, 1) or det not in (0, 1):
            raise LogFormatError(lineno, "candidate/detected must be 0 or 1")
        if det and not cand:
            raise LogFormatError(lineno, "detection on a non-candidate landmark")
        if not dist >= 0:
            raise LogFormatError(lineno, f"negative distance {dist}")
        k = (t, parts[1])
        if key is not None and k != key:
            yield _flush(*key, rows)
            rows = []
        key = k
        rows.append((parts[2], cand, det, dist))
    if rows:
        yield _flush(*key, rows)
