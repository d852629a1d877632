import time
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from cliquefilter.cli import main
from cliquefilter.config import (
    format_config,
    lidar_default,
    load_config,
    parse_config,
)
from cliquefilter.filter import ConfigError
from cliquefilter.priors import PiecewiseLinearCDF

BASE = lidar_default()


def test_default_round_trip():
    text = format_config(BASE)
    assert parse_config(text) == BASE
    assert format_config(parse_config(text)) == text


@given(
    s_max=st.floats(0.5, 10),
    frac=st.floats(0.1, 1),
    rho_l=st.floats(0.01, 0.4),
    variants=st.lists(st.sampled_from(["IFF", "JFF", "JCF", "JCFR"]), min_size=1, unique=True),
    median=st.one_of(st.none(), st.floats(1, 1000)),
    seed=st.integers(0, 2**31),
)
def test_round_trip_property(s_max, frac, rho_l, variants, median, seed):
    cfg = replace(
        BASE, s_max_m=s_max, s_obs_m=s_max * frac, rho_l=rho_l, variants=tuple(variants),
        no_suppression=tuple(variants[:1]), prior_median_s=median, base_seed=seed,
    )
    assert parse_config(format_config(cfg)) == cfg


def test_piecewise_prior_from_config():
    cfg = parse_config(
        format_config(replace(BASE, prior_kind="piecewise", prior_knots=(0, 0, 100, 0.4, 500, 1)))
    )
    assert cfg.prior() == PiecewiseLinearCDF([(0, 0), (100, 0.4), (500, 1)])


def required_text(**drop):
    lines = ["modality = lidar", "s_max_m = 2.0", "s_obs_m = 0.8", "rho_h = 0.75", "rho_l = 0.1"]
    return "\n".join(l for l in lines if l.split(" = ")[0] not in drop) + "\n"


def test_minimal_config_uses_defaults():
    assert parse_config(required_text()) == BASE


@pytest.mark.parametrize(
    "text, needle",
    [
        (required_text(s_max_m=1), "s_max_m"),
        (required_text() + "s_max_m = 3\n", "line 6"),
        (required_text() + "colour = red\n", "colour"),
        (required_text() + "runs = many\n", "line 6"),
        (required_text() + "just words\n", "line 6"),
        (required_text() + "variants = IFF XYZ\n", "XYZ"),
        (required_text().replace("lidar", "sonar"), "sonar"),
        (required_text() + "prior_kind = piecewise\nprior_knots = 0 0 10\n", "prior_knots"),
        (required_text().replace("rho_l = 0.1", "rho_l = 0.9"), "rho"),
        (required_text().replace("s_obs_m = 0.8", "s_obs_m = 3"), "s_obs"),
    ],
)
def test_config_errors_name_the_problem(text, needle):
    with pytest.raises(ConfigError, match=needle):
        parse_config(text)


def test_filter_configs_honour_no_suppression():
    cfg = replace(BASE, no_suppression=("IFF",))
    fc = cfg.filter_configs()
    assert not fc["IFF"].suppression and fc["JCFR"].suppression
    assert not any(c.suppression for c in cfg.filter_configs(suppression=False).values())


# command line


@pytest.fixture
def smoke(tmp_path):
    path = tmp_path / "smoke.cfg"
    path.write_text(format_config(replace(BASE, runs=1, base_seed=0, out_dir=str(tmp_path / "out"))))
    return path


def test_simulate_writes_scene_and_log(smoke, tmp_path, capsys):
    assert main(["simulate", "--config", str(smoke), "--seed", "3", "--out", str(tmp_path / "a")]) == 0
    assert "objects: 8" in capsys.readouterr().out
    main(["simulate", "--config", str(smoke), "--seed", "3", "--out", str(tmp_path / "b")])
    log_a = (tmp_path / "a" / "detections_3.tsv").read_bytes()
    assert log_a == (tmp_path / "b" / "detections_3.tsv").read_bytes()
    assert (tmp_path / "a" / "scene_3.json").exists()


def test_missing_required_field_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text(required_text(s_max_m=1))
    assert main(["simulate", "--config", str(bad)]) == 1
    assert "s_max_m" in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    assert main(["run", "--config", str(tmp_path / "nope.cfg")]) == 1
    assert "nope.cfg" in capsys.readouterr().err


def test_threshold_order_rejected_before_running(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text(format_config(BASE).replace("rho_l = 0.1", "rho_l = 0.8"))
    out = tmp_path / "out"
    assert main(["run", "--config", str(bad), "--out", str(out)]) == 1
    assert not out.exists()


def test_smoke_run(smoke, tmp_path):
    start = time.perf_counter()
    assert main(["run", "--config", str(smoke)]) == 0
    assert time.perf_counter() - start < 10
    out = tmp_path / "out"
    report = (out / "report.txt").read_text()
    for v in BASE.variants:
        assert sum(line.startswith(v + " ") for line in report.splitlines()) == 1
    assert load_config(out / "config.txt") == load_config(smoke)


def test_replay_reproduces_run(smoke, tmp_path):
    main(["run", "--config", str(smoke)])
    runs = tmp_path / "out" / "runs"
    replayed = tmp_path / "replayed.tsv"
    assert main(["replay", str(runs / "detections_0.tsv"), "--config", str(smoke),
                 "--out", str(replayed)]) == 0
    assert replayed.read_bytes() == (runs / "timeline_0.tsv").read_bytes()

    off = tmp_path / "off.tsv"
    main(["replay", str(runs / "detections_0.tsv"), "--config", str(smoke),
          "--suppression", "off", "--out", str(off)])
    assert off.read_bytes() != replayed.read_bytes()


def test_replay_variant_subset(smoke, tmp_path, capsys):
    main(["run", "--config", str(smoke)])
    capsys.readouterr()
    log = tmp_path / "out" / "runs" / "detections_0.tsv"
    assert main(["replay", str(log), "--config", str(smoke), "--variants", "JCFR"]) == 0
    rows = capsys.readouterr().out.splitlines()[1:]
    assert rows and all(r.split("\t")[2] == "JCFR" for r in rows)


def test_replay_empty_log(smoke, tmp_path, capsys):
    empty = tmp_path / "empty.tsv"
    empty.write_text("")
    assert main(["replay", str(empty), "--config", str(smoke)]) == 0
    assert capsys.readouterr().out.splitlines() == ["t\tclique\tvariant\tposterior\tdecision"]


def test_replay_malformed_log(smoke, tmp_path, capsys):
    log = tmp_path / "bad.tsv"
    log.write_text("t\tclique\tlandmark\tcandidate\tdetected\tdistance\n1\tc\tc.0\t1\n")
    assert main(["replay", str(log), "--config", str(smoke)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_unwritable_output_is_runtime_error(smoke, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["simulate", "--config", str(smoke), "--out", str(blocker / "sub")]) == 2
