import csv
import json

import numpy as np
import pytest

from dtqw import io
from dtqw.cli import main
from dtqw.coins import hadamard_coin
from dtqw.transport import MomentSeries
from dtqw.walk import InitialCoin, Ordered, evolve


def run_cli(*argv: str) -> int:
    return main(list(argv))


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# --- io ------------------------------------------------------------------------


def test_float_formatting_uses_12_significant_digits(tmp_path):
    path = tmp_path / "x.csv"
    io.write_csv(path, ("a",), [(1.0 / 3.0,)])
    header, rows = read_csv(path)
    assert rows[0][0] == "0.333333333333"
    assert io.jsonable(np.float64(2.0) / 3.0) == float("0.666666666667")


def test_trajectory_rows_cover_all_sites():
    trajectory = evolve(InitialCoin(51, 0), Ordered(hadamard_coin()), 3)
    rows = io.trajectory_rows(trajectory)
    assert len(rows) == 1 + 3 + 5 + 7
    per_t = {}
    for t, j, *_rest, p in rows:
        per_t.setdefault(t, 0.0)
        per_t[t] += p
    for t, total in per_t.items():
        assert total == pytest.approx(1.0, abs=1e-12)
    # parity-forbidden sites are present, with exactly zero probability
    assert any(t == 1 and j == 0 and p == 0.0 for t, j, *_r, p in rows)


def test_moment_series_csv_round_trip(tmp_path):
    series = MomentSeries(times=np.arange(1, 6), m2=np.array([1.0, 2, 3, 5, 8.25]))
    path = tmp_path / "m2.csv"
    io.write_csv(path, io.MOMENT_HEADER, io.moment_rows(series))
    back = io.read_moment_series_csv(path)
    np.testing.assert_array_equal(back.times, series.times)
    np.testing.assert_allclose(back.m2, series.m2, rtol=1e-12)


def test_read_moment_series_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,value\n1,1\n")
    with pytest.raises(ValueError):
        io.read_moment_series_csv(path)


# --- CLI -----------------------------------------------------------------------


def test_cli_walk_outputs(tmp_path, capsys):
    out = tmp_path / "run"
    code = run_cli(
        "walk", "--theta", "51", "--phi", "0", "--steps", "20",
        "--sequence", "FFHFHFHHFFFFFHFHHHHH", "--out", str(out),
    )
    assert code == 0
    for name in (
        "trajectory.csv", "trajectory.json", "distribution.csv",
        "distribution.json", "moments.csv", "moments.json",
    ):
        assert (out / name).exists()
    header, rows = read_csv(out / "distribution.csv")
    assert header == list(io.DISTRIBUTION_HEADER)
    assert sum(float(r[1]) for r in rows) == pytest.approx(1.0, abs=1e-9)
    payload = json.loads((out / "trajectory.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["config"]["steps"] == 20


def test_cli_walk_rejects_zero_steps(tmp_path, capsys):
    code = run_cli(
        "walk", "--theta", "51", "--phi", "0", "--steps", "0",
        "--ordered", "H", "--out", str(tmp_path / "x"),
    )
    assert code != 0
    err = json.loads(capsys.readouterr().err)
    assert "steps" in err["message"]


def test_cli_refuses_overwrite_without_force(tmp_path, capsys):
    out = tmp_path / "run"
    args = ("walk", "--theta", "51", "--phi", "0", "--steps", "2",
            "--ordered", "H", "--out", str(out))
    assert run_cli(*args) == 0
    assert run_cli(*args) == 1
    err = json.loads(capsys.readouterr().err)
    assert "refusing to overwrite" in err["message"]
    assert run_cli(*args, "--force") == 0


def test_cli_entropy_multiple_phis(tmp_path):
    out = tmp_path / "curves"
    code = run_cli(
        "entropy", "--theta", "51", "--phi", "0,90,180", "--steps", "5",
        "--ordered", "H", "--out", str(out), "--eigenvalues",
    )
    assert code == 0
    header, rows = read_csv(out / "entropy_curve_phi90.csv")
    assert header == list(io.ENTROPY_EIGEN_HEADER)
    assert len(rows) == 6
    assert float(rows[0][1]) == 0.0  # t = 0 row


def test_cli_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "# demo configuration\n"
        "schema_version = 1\n"
        "command = walk\n"
        "theta = 51\n"
        "phi = 0\n"
        "steps = 4\n"
        "ordered = H\n"
    )
    out = tmp_path / "out_a"
    assert run_cli("walk", "--config", str(cfg), "--out", str(out)) == 0
    payload = json.loads((out / "distribution.json").read_text())
    assert payload["config"]["steps"] == 4
    # flags win over the file
    out2 = tmp_path / "out_b"
    assert run_cli("walk", "--config", str(cfg), "--steps", "6", "--out", str(out2)) == 0
    payload2 = json.loads((out2 / "distribution.json").read_text())
    assert payload2["config"]["steps"] == 6


def test_cli_config_rejects_unknown_keys_and_versions(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("schema_version = 1\nwibble = 3\n")
    assert run_cli("walk", "--config", str(bad)) == 1
    assert "wibble" in json.loads(capsys.readouterr().err)["message"]

    worse = tmp_path / "worse.cfg"
    worse.write_text("schema_version = 2\ntheta = 51\n")
    assert run_cli("walk", "--config", str(worse)) == 1

    unversioned = tmp_path / "unversioned.cfg"
    unversioned.write_text("theta = 51\n")
    assert run_cli("walk", "--config", str(unversioned)) == 1

    mismatched = tmp_path / "mismatched.cfg"
    mismatched.write_text("schema_version = 1\ncommand = sweep\n")
    assert run_cli("walk", "--config", str(mismatched)) == 1


def test_cli_config_rerun_reproduces_results_byte_for_byte(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(
        "schema_version = 1\ncommand = sweep\ntheta = 51\nphi = 0\nn = 8\n"
        "threshold = 0.9\nbins = 12\n"
    )
    out1, out2 = tmp_path / "s1", tmp_path / "s2"
    assert run_cli("sweep", "--config", str(cfg), "--out", str(out1)) == 0
    assert run_cli("sweep", "--config", str(cfg), "--out", str(out2)) == 0
    a = json.loads((out1 / "sweep_report.json").read_text())
    b = json.loads((out2 / "sweep_report.json").read_text())
    a.pop("wall_time_s"), b.pop("wall_time_s")
    a["config"].pop("out"), b["config"].pop("out")
    assert a == b
    assert (out1 / "sweep_histogram.csv").read_text() == (
        out2 / "sweep_histogram.csv"
    ).read_text()


def test_cli_sweep_sampled(tmp_path):
    out = tmp_path / "sampled"
    code = run_cli(
        "sweep", "--theta", "51", "--phi", "0", "--n", "26",
        "--samples", "500", "--seed", "11", "--out", str(out),
    )
    assert code == 0
    report = json.loads((out / "sweep_report.json").read_text())
    assert report["sampled"] is True
    assert report["samples"] == 500
    assert report["std_error"] > 0


def test_cli_lz_default_fixture(tmp_path):
    out = tmp_path / "lz"
    assert run_cli("lz", "--out", str(out), "--format", "csv") == 0
    header, rows = read_csv(out / "lz_complexity.csv")
    assert header == ["sequence", "length", "lz_complexity", "expected"]
    assert len(rows) == 12
    assert not (out / "lz_complexity.json").exists()


def test_cli_lz_single_sequence(tmp_path):
    out = tmp_path / "lz1"
    assert run_cli("lz", "--sequence", "HFHFHFHFHFHFHFHFHFHF", "--out", str(out)) == 0
    header, rows = read_csv(out / "lz_complexity.csv")
    assert rows[0][2] == "3"


def test_cli_fit_from_series_file(tmp_path):
    series_path = tmp_path / "m2.csv"
    t = np.arange(1, 21)
    io.write_csv(
        series_path, io.MOMENT_HEADER,
        [(int(x), float(2.5 * x**1.7)) for x in t],
    )
    out = tmp_path / "fit"
    assert run_cli("fit", "--input", str(series_path), "--out", str(out)) == 0
    fit = json.loads((out / "fit.json").read_text())
    assert fit["prefactor"] == pytest.approx(2.5, abs=1e-9)
    assert fit["exponent"] == pytest.approx(1.7, abs=1e-9)


def test_cli_fit_classical(tmp_path):
    out = tmp_path / "fitc"
    assert run_cli("fit", "--classical", "20", "--out", str(out)) == 0
    fit = json.loads((out / "fit.json").read_text())
    assert abs(fit["exponent"] - 1.0) < 1e-12


def test_cli_walk_then_fit_round_trip(tmp_path):
    run = tmp_path / "run"
    assert run_cli(
        "walk", "--theta", "51", "--phi", "0", "--steps", "20",
        "--ordered", "H", "--out", str(run), "--format", "csv",
    ) == 0
    out = tmp_path / "fit"
    assert run_cli("fit", "--input", str(run / "moments.csv"), "--out", str(out)) == 0
    fit = json.loads((out / "fit.json").read_text())
    assert abs(fit["exponent"] - 2.0) <= 0.1
    assert abs(fit["prefactor"] - 0.29) <= 0.03


def test_cli_fit_requires_one_source(tmp_path, capsys):
    assert run_cli("fit", "--out", str(tmp_path / "f")) == 1
    capsys.readouterr()


def test_cli_tomo(tmp_path):
    out = tmp_path / "tomo"
    code = run_cli(
        "tomo", "--theta", "51", "--phi", "0", "--steps", "6", "--ordered", "H",
        "--total-counts", "9000", "--seed", "5", "--out", str(out),
    )
    assert code == 0
    payload = json.loads((out / "tomography.json").read_text())
    assert payload["summary"]["total_counts"] == 9000
    assert 0.0 <= payload["summary"]["entropy_hat"] <= 1.0
    header, rows = read_csv(out / "counts.csv")
    assert header == list(io.COUNTS_HEADER)
    assert sum(float(r[3]) for r in rows) == pytest.approx(9000)


def test_cli_tomo_noiseless_matches_exact(tmp_path):
    out = tmp_path / "tomo0"
    code = run_cli(
        "tomo", "--theta", "51", "--phi", "0", "--steps", "6", "--ordered", "H",
        "--total-counts", "9000", "--noiseless", "--out", str(out), "--format", "json",
    )
    assert code == 0
    payload = json.loads((out / "tomography.json").read_text())
    s = payload["summary"]
    assert s["entropy_hat"] == pytest.approx(s["exact_entropy"], abs=1e-9)
    assert s["rho_c_fidelity"] == pytest.approx(1.0, abs=1e-9)


def test_cli_requires_exactly_one_policy(tmp_path, capsys):
    code = run_cli(
        "walk", "--theta", "51", "--phi", "0", "--steps", "3",
        "--ordered", "H", "--sequence", "HHH", "--out", str(tmp_path / "x"),
    )
    assert code == 1
    assert "exactly one coin policy" in json.loads(capsys.readouterr().err)["message"]


def test_cli_seeded_commands_are_deterministic(tmp_path):
    args = ("walk", "--theta", "20", "--phi", "45", "--steps", "9",
            "--dynamic-seed", "4", "--format", "csv")
    out1, out2 = tmp_path / "d1", tmp_path / "d2"
    assert run_cli(*args, "--out", str(out1)) == 0
    assert run_cli(*args, "--out", str(out2)) == 0
    assert (out1 / "trajectory.csv").read_text() == (out2 / "trajectory.csv").read_text()
