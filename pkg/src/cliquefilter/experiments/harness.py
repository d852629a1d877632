"""Monte Carlo harness: every variant replays the same detection stream."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from ..records import CliqueObservation, fmt_float
from ..sim.simulate import Simulation, simulate
from ..variants import Variant, make_filter
from ..filter import MaintenanceDecision
from .metrics import ConfusionCounts, accuracy, mes_s, precision

TIMELINE_HEADER = "t\tclique\tvariant\tposterior\tdecision"


@dataclass(frozen=True)
class TimelineRow:
    time: float
    clique_id: str
    variant: str
    posterior: float
    decision: MaintenanceDecision
    suppressed: bool = False

    def format(self) -> str:
        return (
            f"{fmt_float(self.time)}\t{self.clique_id}\t{self.variant}\t"
            f"{fmt_float(self.posterior)}\t{self.decision.value}"
        )


def format_timeline(rows: Iterable[TimelineRow]) -> str:
    return TIMELINE_HEADER + "\n" + "".join(r.format() + "\n" for r in rows)


def run_filters(
    observations: Sequence[CliqueObservation], filter_configs: dict
) -> tuple:
    """Feed ``observations`` to one bank per variant.

    Returns ``(rows, banks)``; rows are ordered by observation, then by the
    variant order of ``filter_configs``.
    """
    banks = {Variant(v): make_filter(v, cfg) for v, cfg in filter_configs.items()}
    rows = []
    for obs in observations:
        for v, bank in banks.items():
            r = bank.observe(obs)
            rows.append(
                TimelineRow(r.time, r.clique_id, v.value, r.posterior, r.decision, r.suppressed)
            )
    return rows, banks


@dataclass
class RunResult:
    seed: int
    run_end: float
    survival: dict  # clique -> true survival time
    steps: dict  # clique -> number of expected-observation steps
    counts: dict  # variant -> ConfusionCounts
    removal: dict  # variant -> {clique: removal time or None}
    rows: list = field(repr=False, default_factory=list)
    simulation: Optional[Simulation] = field(repr=False, default=None)

    def accuracy(self, variant: str) -> Optional[float]:
        c = self.counts[variant]
        return accuracy(c) if c.tr else None

    def precision(self, variant: str) -> Optional[float]:
        return precision(self.counts[variant])

    def mes_s_pairs(self, variant: str) -> tuple:
        """(removal, true) pairs for every clique observed at least once."""
        cl = [c for c, n in self.steps.items() if n > 0]
        return [self.removal[variant][c] for c in cl], [self.survival[c] for c in cl]


def score(rows: Sequence[TimelineRow], survival: dict, variants: Sequence[str]) -> dict:
    counts = {v: ConfusionCounts() for v in variants}
    for r in rows:
        counts[r.variant].add(
            predicted=r.decision is MaintenanceDecision.KEEP,
            actual=r.time <= survival[r.clique_id],
        )
    return counts


def run_single(
    seed: int,
    world,
    trajectory,
    sensor,
    filter_configs: dict,
    keep_simulation: bool = False,
) -> RunResult:
    sim = simulate(seed, world, trajectory, sensor)
    rows, banks = run_filters(sim.observations, filter_configs)
    variants = [Variant(v).value for v in filter_configs]
    survival = {o.object_id: o.survival_time for o in sim.scene.objects}
    removal = {
        bank.variant.value: {c: bank.removal_time(c) for c in survival}
        for bank in banks.values()
    }
    return RunResult(
        seed=seed,
        run_end=sim.scene.duration,
        survival=survival,
        steps=sim.steps_per_clique(),
        counts=score(rows, survival, variants),
        removal=removal,
        rows=rows,
        simulation=sim if keep_simulation else None,
    )


@dataclass
class VariantSummary:
    variant: str
    accuracy: float
    precision: Optional[float]
    mes_s: float
    runs: int
    counts: ConfusionCounts


@dataclass
class MetricsReport:
    summaries: dict  # variant -> VariantSummary
    runs: list  # RunResult, seed order

    def table(self) -> str:
        lines = [f"{'filter':<8}{'accuracy':>10}{'precision':>11}{'MES/S':>9}{'runs':>6}"]
        for s in self.summaries.values():
            prec = "n/a" if s.precision is None else f"{s.precision:.4f}"
            lines.append(
                f"{s.variant:<8}{s.accuracy:>10.4f}{prec:>11}{s.mes_s:>9.4f}{s.runs:>6}"
            )
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "variants": {
                v: {
                    "accuracy": s.accuracy,
                    "precision": s.precision,
                    "mes_s": s.mes_s,
                    "runs": s.runs,
                    "tp": s.counts.tp,
                    "fp": s.counts.fp,
                    "tn": s.counts.tn,
                    "fn": s.counts.fn,
                    "tr": s.counts.tr,
                }
                for v, s in self.summaries.items()
            },
            "runs": [
                {
                    "seed": r.seed,
                    "run_end": r.run_end,
                    "survival": r.survival,
                    "removal": r.removal,
                }
                for r in self.runs
            ],
            "never_removed_convention": "removal time := run end",
        }


def summarize(runs: Sequence[RunResult], variants: Sequence[str]) -> MetricsReport:
    summaries = {}
    for v in variants:
        accs = [a for a in (r.accuracy(v) for r in runs) if a is not None]
        precs = [p for p in (r.precision(v) for r in runs) if p is not None]
        est, true = [], []
        total = ConfusionCounts()
        for r in runs:
            e, t = r.mes_s_pairs(v)
            est += [r.run_end if x is None else x for x in e]
            true += t
            total += r.counts[v]
        summaries[v] = VariantSummary(
            variant=v,
            accuracy=float(np.mean(accs)) if accs else float("nan"),
            precision=float(np.mean(precs)) if precs else None,
            mes_s=mes_s(est, true, runs[0].run_end) if true else float("nan"),
            runs=len(runs),
            counts=total,
        )
    return MetricsReport(summaries, list(runs))


def _run_seed(args):
    return run_single(*args)


def run_batch(
    runs: int,
    base_seed: int,
    world,
    trajectory,
    sensor,
    filter_configs: dict,
    jobs: int = 1,
    keep_simulation: bool = False,
) -> MetricsReport:
    """Run seeds ``base_seed .. base_seed + runs - 1`` and aggregate per variant.

    With ``jobs > 1`` runs are spread over worker processes; results are
    still aggregated in seed order, so the report does not depend on
    ``jobs``.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    seeds = range(base_seed, base_seed + runs)
    tasks = [(s, world, trajectory, sensor, filter_configs, keep_simulation) for s in seeds]
    results = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_seed, t) for t in tasks]
            for s, fut in zip(seeds, futures):
                try:
                    results.append(fut.result())
                except Exception as e:
                    raise RuntimeError(f"run with seed {s} failed: {e}") from e
    else:
        for s, t in zip(seeds, tasks):
            try:
                results.append(_run_seed(t))
            except Exception as e:
                raise RuntimeError(f"run with seed {s} failed: {e}") from e
    variants = [Variant(v).value for v in filter_configs]
    return summarize(results, variants)
