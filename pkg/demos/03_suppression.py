"""
False-negative suppression
==========================

When every landmark of a clique is far away (beyond s_obs but inside s_max)
and almost nothing is detected, the batch says more about the sensor than
about the object. The gate drops such batches whole.
"""

import numpy as np

from cliquefilter.config import lidar_default
from cliquefilter.experiments.harness import run_filters
from cliquefilter.filter import suppression_gate
from cliquefilter.sim.simulate import simulate

s_max, s_obs, delta = 2.0, 0.8, 0.03
print(suppression_gate(np.array([1.2, 1.5, 1.9]), 0, s_max, s_obs, delta))  # far, silent: drop
print(suppression_gate(np.array([0.5, 1.5, 1.9]), 0, s_max, s_obs, delta))  # one is close: keep
print(suppression_gate(np.array([1.2, 1.5, 1.9]), 1, s_max, s_obs, delta))  # 1/3 detected: keep

# effect over a whole run
cfg = lidar_default()
sim = simulate(0, cfg.world(), cfg.trajectory(), cfg.sensor())
survival = {o.object_id: o.survival_time for o in sim.scene.objects}
for on in (True, False):
    rows, banks = run_filters(sim.observations, cfg.filter_configs(suppression=on))
    early = {}
    for bank in banks.values():
        times = [bank.removal_time(c) for c in survival]
        early[bank.variant.value] = sum(t is not None and t < survival[c]
                                        for c, t in zip(survival, times))
    n_sup = sum(r.suppressed for r in rows)
    print(f"suppression {'on ' if on else 'off'}: {n_sup:5d} batches dropped, "
          f"premature removals {early}")
