from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


class MetricError(ValueError):
    pass


@dataclass
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def tr(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def add(self, predicted: bool, actual: bool) -> None:
        if predicted and actual:
            self.tp += 1
        elif predicted:
            self.fp += 1
        elif actual:
            self.fn += 1
        else:
            self.tn += 1

    def __iadd__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        self.tp += other.tp
        self.fp += other.fp
        self.tn += other.tn
        self.fn += other.fn
        return self


def accuracy(c: ConfusionCounts) -> float:
    if c.tr == 0:
        raise MetricError("accuracy is undefined with no scored time steps")
    return (c.tp + c.tn) / c.tr


def precision(c: ConfusionCounts) -> Optional[float]:
    """TP / (TP + FP), or ``None`` when nothing was predicted positive."""
    if c.tp + c.fp == 0:
        return None
    return c.tp / (c.tp + c.fp)


def mes_s(
    removal_times: Sequence[Optional[float]],
    true_times: Sequence[float],
    run_end: float,
) -> float:
    """Mean over runs of estimated / true survival time.

    A run in which the filter never removed the clique counts as removal at
    ``run_end``.
    """
    if len(removal_times) != len(true_times):
        raise MetricError(
            f"{len(removal_times)} removal times vs {len(true_times)} true times"
        )
    if not true_times:
        raise MetricError("need at least one run")
    est = np.array([run_end if r is None else r for r in removal_times], dtype=float)
    true = np.asarray(true_times, dtype=float)
    if np.any(true <= 0):
        raise MetricError("true survival times must be positive")
    return float(np.mean(est / true))
