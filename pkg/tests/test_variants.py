import numpy as np
import pytest

from cliquefilter.detection import DetectionBatch, DetectionOutcome
from cliquefilter.filter import ConfigError, MaintenanceDecision, posterior
from cliquefilter.oracle import evidence_oracle
from cliquefilter.priors import Exponential
from cliquefilter.records import CliqueObservation
from cliquefilter.variants import FilterConfig, Variant, make_filter

PRIOR = Exponential(0.05)
CFG = FilterConfig(PRIOR, p_false=0.05, p_miss=0.2, suppression=False)


def obs(t, detected, candidate=None, distance=None, clique="c"):
    n = len(detected)
    return CliqueObservation(
        float(t),
        clique,
        tuple(f"{clique}.{i}" for i in range(n)),
        np.ones(n, bool) if candidate is None else np.array(candidate, bool),
        np.array(detected, np.int8),
        np.full(n, 0.5) if distance is None else np.array(distance, float),
    )


def test_unknown_variant():
    with pytest.raises(ConfigError):
        make_filter("XYZ", CFG)


def test_config_rejects_bad_thresholds():
    with pytest.raises(ConfigError):
        FilterConfig(PRIOR, rho_h=0.1, rho_l=0.5)


def test_variants_select_noise_model():
    assert CFG.noise(Variant.JCFR).miss_model.s_max == CFG.s_max
    assert CFG.noise(Variant.JCF).miss_model.p_miss == CFG.p_miss


def test_jcf_of_size_one_equals_iff():
    rng = np.random.default_rng(11)
    for _ in range(20):
        iff, jcf = make_filter("IFF", CFG), make_filter("JCF", CFG)
        for t in range(1, 30):
            o = obs(t, [int(rng.random() < 0.5)])
            assert iff.observe(o).posterior == jcf.observe(o).posterior


def test_jcfr_at_zero_range_is_jcf_with_no_misses():
    jcfr = make_filter("JCFR", CFG)
    jcf0 = make_filter("JCF", FilterConfig(PRIOR, p_false=0.05, p_miss=0.0, suppression=False))
    for t, det in enumerate([[1, 1], [1, 1], [1, 1]], start=1):
        o = obs(t, det, distance=[0.0, 0.0])
        assert jcfr.observe(o).posterior == pytest.approx(jcf0.observe(o).posterior, rel=1e-15)


def test_iff_updates_only_candidates_and_matches_oracle():
    iff = make_filter("IFF", CFG)
    history = {"c.0": [], "c.1": []}
    rng = np.random.default_rng(5)
    for t in range(1, 15):
        cand = rng.random(2) < 0.6
        cand[0] = cand[0] or t == 1
        det = (rng.random(2) < 0.5) & cand
        iff.observe(obs(t, det.astype(int), candidate=cand))
        for i, lid in enumerate(history):
            if cand[i]:
                history[lid].append(
                    DetectionBatch(float(t), (DetectionOutcome(lid, int(det[i]), 0.5),))
                )
    noise = CFG.noise(Variant.IFF)
    for lid, hist in history.items():
        if not hist:
            continue
        st = iff.state(lid)
        assert st.update_count == len(hist)
        t = st.last_update_time
        assert posterior(st, t, PRIOR) == pytest.approx(
            evidence_oracle(hist, noise, PRIOR, t), rel=1e-9
        )


def test_jff_ignores_non_candidates_and_jcf_counts_them():
    jff, jcf = make_filter("JFF", CFG), make_filter("JCF", CFG)
    o = obs(1, [1, 0, 0], candidate=[True, False, False])
    jff.observe(o)
    jcf.observe(o)
    assert jff.state("c").log_likelihood == pytest.approx(np.log(0.8))
    assert jcf.state("c").log_likelihood == pytest.approx(np.log(0.8 * 0.2 * 0.2))


def test_iff_clique_belief_is_mean_of_landmarks():
    iff = make_filter("IFF", CFG)
    r = iff.observe(obs(1, [1, 0, 0]))
    mean = np.mean([iff.landmark_posterior(f"c.{i}", 1.0) for i in range(3)])
    assert r.posterior == pytest.approx(mean)


def test_removal_is_sticky():
    f = make_filter("JCF", CFG)
    t = 1
    while f.removal_time("c") is None:
        f.observe(obs(t, [0, 0, 0, 0]))
        t += 1
    removed = f.removal_time("c")
    frozen = f.state("c")
    r = f.observe(obs(t, [1, 1, 1, 1]))
    assert r.decision is MaintenanceDecision.REMOVE_FROM_MAP
    assert f.state("c") == frozen and f.removal_time("c") == removed


def test_suppressed_step_leaves_state_untouched():
    cfg = FilterConfig(PRIOR, p_false=0.05, p_miss=0.2, s_max=2.0, s_obs=0.8)
    for v in Variant:
        f = make_filter(v, cfg)
        f.observe(obs(1, [1, 1], distance=[0.5, 0.5]))
        before = [f.state(k) for k in (("c.0", "c.1") if v is Variant.IFF else ("c",))]
        r = f.observe(obs(2, [0, 0], distance=[1.5, 1.7]))
        assert r.suppressed
        after = [f.state(k) for k in (("c.0", "c.1") if v is Variant.IFF else ("c",))]
        assert before == after


def test_jcf_needs_unobserved_members_to_fall():
    # members outside the field of view still count as misses for JCF
    jff, jcf = make_filter("JFF", CFG), make_filter("JCF", CFG)
    for t in range(1, 6):
        o = obs(t, [0] * 5, candidate=[True] + [False] * 4)
        jff.observe(o)
        jcf.observe(o)
    assert jcf.clique_posterior("c", 5.0) < jff.clique_posterior("c", 5.0)
