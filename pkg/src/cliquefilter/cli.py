"""Command-line entry point: ``cliquefilter {simulate,run,replay}``.

Exit codes: 0 on success, 1 for configuration errors, 2 for runtime errors
(I/O failures, malformed detection logs, failed runs).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from .config import ExperimentConfig, format_config, load_config
from .experiments.harness import format_timeline, run_batch, run_filters
from .filter import ConfigError
from .records import LogFormatError, read_log, write_log
from .sim.io import dump_scene
from .sim.simulate import simulate

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = replace(cfg, base_seed=args.seed)
    if getattr(args, "out", None):
        cfg = replace(cfg, out_dir=args.out)
    return cfg


def _out_dir(cfg: ExperimentConfig) -> Path:
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not os.access(out, os.W_OK):
        raise ConfigError(f"output directory {out} is not writable")
    return out


def _write(path: Path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_simulate(args) -> int:
    cfg = _load(args)
    out = _out_dir(cfg)
    seed = cfg.base_seed
    sim = simulate(seed, cfg.world(), cfg.trajectory(), cfg.sensor())
    scene_path = out / f"scene_{seed}.json"
    log_path = out / f"detections_{seed}.tsv"
    with open(scene_path, "w", encoding="utf-8", newline="\n") as fh:
        dump_scene(sim.scene, fh)
    with open(log_path, "w", encoding="utf-8", newline="\n") as fh:
        write_log(sim.observations, fh)
    n_feat = sum(len(o.features) for o in sim.scene.objects)
    print(f"scene:      {scene_path}")
    print(f"detections: {log_path}")
    print(f"objects: {len(sim.scene.objects)}  features: {n_feat}")
    steps = sim.steps_per_clique()
    for o in sim.scene.objects:
        print(f"  {o.object_id}: features={len(o.features)} "
              f"survival={o.survival_time:.1f} TR={steps[o.object_id]}")
    return EXIT_OK


def cmd_run(args) -> int:
    cfg = _load(args)
    out = _out_dir(cfg)
    filter_configs = cfg.filter_configs()
    report = run_batch(
        cfg.runs,
        cfg.base_seed,
        cfg.world(),
        cfg.trajectory(),
        cfg.sensor(),
        filter_configs,
        jobs=args.jobs,
        keep_simulation=True,
    )
    runs_dir = out / "runs"
    runs_dir.mkdir(exist_ok=True)
    for r in report.runs:
        with open(runs_dir / f"detections_{r.seed}.tsv", "w", encoding="utf-8", newline="\n") as fh:
            write_log(r.simulation.observations, fh)
        _write(runs_dir / f"timeline_{r.seed}.tsv", format_timeline(r.rows))
    _write(out / "config.txt", format_config(cfg))
    table = report.table()
    _write(
        out / "report.txt",
        f"runs: {cfg.runs}  seeds: {cfg.base_seed}..{cfg.base_seed + cfg.runs - 1}\n\n"
        + table
        + "\nMES/S counts a clique that is never removed as removed at the end of the run.\n",
    )
    _write(out / "summary.json", json.dumps(report.to_dict(), indent=1, sort_keys=True) + "\n")
    print(table, end="")
    print(f"wrote {out / 'report.txt'}, {out / 'summary.json'} and {len(report.runs)} timelines")
    return EXIT_OK


def cmd_replay(args) -> int:
    cfg = load_config(args.config)
    if args.variants:
        cfg = replace(cfg, variants=tuple(args.variants))
        cfg.validate()
    suppression = {"on": True, "off": False, None: None}[args.suppression]
    with open(args.log, encoding="utf-8") as fh:
        observations = list(read_log(fh))
    rows, _ = run_filters(observations, cfg.filter_configs(suppression))
    text = format_timeline(rows)
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cliquefilter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="write a scene dump and detection log for one seed")
    s.add_argument("--config", required=True)
    s.add_argument("--seed", type=int, help="overrides base_seed")
    s.add_argument("--out", help="output directory (overrides out_dir)")
    s.set_defaults(func=cmd_simulate)

    r = sub.add_parser("run", help="run every variant over R seeded simulations")
    r.add_argument("--config", required=True)
    r.add_argument("--seed", type=int, help="overrides base_seed")
    r.add_argument("--out", help="output directory (overrides out_dir)")
    r.add_argument("--jobs", type=int, default=1, help="worker processes")
    r.set_defaults(func=cmd_run)

    rp = sub.add_parser("replay", help="filter a stored detection log offline")
    rp.add_argument("log")
    rp.add_argument("--config", required=True, help="supplies the filter parameters")
    rp.add_argument("--variants", nargs="+", help="subset/order of variants to run")
    rp.add_argument("--suppression", choices=["on", "off"],
                    help="force suppression for all variants")
    rp.add_argument("--out", help="timeline file (default: stdout)")
    rp.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except LogFormatError as e:
        print(f"error: {args.log}: {e}", file=sys.stderr)
        return EXIT_RUNTIME
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except OSError as e:
        where = f"{e.filename}: " if e.filename else ""
        print(f"error: {where}{e.strerror or e}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
