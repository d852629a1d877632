"""
A small benchmark
=================

Every variant replays the same simulated detection streams; the harness
scores each expected-observation step and reports accuracy, precision and
MES/S (estimated over true survival time, 1.0 is ideal). The acceptance
suite runs the same thing with R=100.
"""

import sys
from dataclasses import replace

from cliquefilter.config import format_config, lidar_default
from cliquefilter.experiments.harness import run_batch

runs = int(sys.argv[1]) if len(sys.argv) > 1 else 10
cfg = replace(lidar_default(), runs=runs)

report = run_batch(cfg.runs, cfg.base_seed, cfg.world(), cfg.trajectory(), cfg.sensor(),
                   cfg.filter_configs())
print(report.table())

# the same experiment from the command line:
#   cliquefilter run --config demos/lidar.cfg --out out
with open("lidar.cfg", "w") as fh:
    fh.write(format_config(cfg))
print("config written to lidar.cfg")
