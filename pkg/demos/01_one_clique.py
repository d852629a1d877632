"""
Tracking one clique by hand
===========================

Feed a few detection batches for a three-landmark clique into the filter and
watch the persistence belief move. The same numbers are then recomputed with
the direct (non-recursive) evidence sum.
"""

from cliquefilter.detection import Constant, DetectionBatch, DetectionOutcome, SensorNoiseModel
from cliquefilter.filter import classify, initial_state, posterior, update
from cliquefilter.oracle import evidence_oracle
from cliquefilter.priors import Exponential

prior = Exponential.from_median(50.0)
noise = SensorNoiseModel(p_false=0.05, miss_model=Constant(0.2))


def batch(t, *hits):
    return DetectionBatch(t, tuple(DetectionOutcome(f"k{i}", h, 1.0) for i, h in enumerate(hits)))


# the object is seen well twice, then only one landmark fires, then nothing
history = [batch(1.0, 1, 1, 0), batch(2.0, 1, 1, 1), batch(5.0, 0, 1, 0), batch(8.0, 0, 0, 0),
           batch(9.0, 0, 0, 0)]

state = initial_state("chair")
for n, b in enumerate(history, start=1):
    state = update(state, b, noise, prior)
    p = posterior(state, b.time, prior)
    check = evidence_oracle(history[:n], noise, prior, b.time)
    print(f"t={b.time:4.1f} hits={b.n_positive}  belief={p:.4f}  direct={check:.4f}  "
          f"-> {classify(p, 0.75, 0.1).value}")

# between updates the belief decays with the prior's survival function
for t in (10.0, 20.0, 40.0):
    print(f"t={t:4.1f} (no data) belief={posterior(state, t, prior):.4f}")
