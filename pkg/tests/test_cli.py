import filecmp
import json

import numpy as np
import pytest

from laghyp import SuiteConfig, load_grid_function, make_fixture
from laghyp.cli import main


def run(args):
    return main([str(a) for a in args])


def test_verify_special_writes_reports(tmp_path):
    assert run(["verify", "special", "--out", tmp_path]) == 0
    payload = json.loads((tmp_path / "special.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["suite"] == "special"
    assert payload["all_pass"] is True
    checks = payload["checks"]
    assert checks and all(set(c) == {"name", "measured", "tolerance", "pass"} for c in checks)
    names = [c["name"] for c in checks]
    assert names == sorted(names)
    csv_text = (tmp_path / "special.csv").read_text()
    assert csv_text.splitlines()[0] == "name,measured,tolerance,pass"
    assert (tmp_path / "special.log").exists()


def test_verify_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.mkdir(), b.mkdir()
    assert run(["verify", "special", "--out", a]) == 0
    assert run(["verify", "special", "--out", b]) == 0
    assert filecmp.cmp(a / "special.json", b / "special.json", shallow=False)
    assert filecmp.cmp(a / "special.csv", b / "special.csv", shallow=False)


def test_invalid_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_x=8\n")
    assert run(["--config", cfg, "verify", "all", "--out", tmp_path]) == 2


def test_unknown_config_key_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_quarks=3\n")
    assert run(["--config", cfg, "verify", "special", "--out", tmp_path]) == 2


def test_malformed_config_exits_2(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("n_x 160\n")
    assert run(["--config", cfg, "verify", "special", "--out", tmp_path]) == 2
    cfg.write_text("x_max=wide\n")
    assert run(["--config", cfg, "verify", "special", "--out", tmp_path]) == 2
    assert run(["--config", tmp_path / "absent.cfg", "verify", "special"]) == 2


def test_failed_checks_exit_1(tmp_path):
    assert run(["--tol-scale", "1e-12", "verify", "special", "--out", tmp_path]) == 1
    payload = json.loads((tmp_path / "special.json").read_text())
    assert payload["all_pass"] is False


def test_unknown_subcommand_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2


def _small_cfg(tmp_path):
    return SuiteConfig(n_x=32, n_t=128, out_dir=str(tmp_path))


def test_fixture_roundtrip_bit_exact(tmp_path):
    csv_path, json_path = make_fixture(
        "heat_kernel", alpha=0.5, out_dir=str(tmp_path), cfg=_small_cfg(tmp_path)
    )
    loaded = load_grid_function(str(csv_path)[: -len(".csv")])
    resaved = tmp_path / "again"
    resaved.mkdir()
    from laghyp import save_grid_function

    save_grid_function(loaded, str(resaved / "heat_kernel"))
    assert filecmp.cmp(csv_path, resaved / "heat_kernel.csv", shallow=False)
    assert filecmp.cmp(json_path, resaved / "heat_kernel.json", shallow=False)


def test_bump_fixture_vanishes_outside_support(tmp_path):
    csv_path, _ = make_fixture(
        "bump", alpha=0.0, out_dir=str(tmp_path), cfg=_small_cfg(tmp_path), radius=1.0
    )
    f = load_grid_function(str(csv_path)[: -len(".csv")])
    outside = f.radial.nodes > 1.0
    assert np.all(f.values[outside, :] == 0.0)
    inside = f.radial.nodes < 0.5
    assert np.all(np.real(f.values[np.ix_(inside, np.abs(f.time.nodes) < 0.5)]) > 0.0)


def test_transform_summary_peaks_at_packet_parameters(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text("n_x=96\nn_t=128\n")
    code = run(
        ["--config", cfg, "transform", "--fixture", "psi_packet", "--alpha", "0.0",
         "--direction", "inverse", "--m-max", "32", "--lambda-max", "6.0",
         "--out", tmp_path]
    )
    assert code == 0
    summary = json.loads((tmp_path / "transform_summary.json").read_text())
    assert summary["schema_version"] == 1
    assert summary["peak_m"] == 2
    assert abs(summary["peak_lambda"] - 1.0) < 0.5
    assert summary["roundtrip_gap_rel"] < 1e-2
    assert (tmp_path / "psi_packet_hat.csv").exists()


def test_tables_match_direct_evaluation(tmp_path):
    import csv as csv_mod

    from laghyp import bessel_kernel, laguerre_function

    assert run(["tables", "--alpha", "0.5", "--m-max", "2", "--x-max", "4.0",
                "--n", "5", "--out", tmp_path]) == 0
    with open(tmp_path / "tables.csv", newline="") as fh:
        rows = list(csv_mod.DictReader(fh))
    assert {r["function"] for r in rows} == {"laguerre_function", "bessel_kernel"}
    for r in rows[:40]:
        x = float(r["x"])
        if r["function"] == "laguerre_function":
            want = laguerre_function(int(r["m"]), 0.5, x)
        else:
            want = float(np.asarray(bessel_kernel(0.5, x)).ravel()[0])
        assert float(r["value"]) == pytest.approx(want, rel=1e-12, abs=1e-300)


def test_miyachi_report_mirrors_certificate(tmp_path):
    cfg = SuiteConfig(n_x=32, n_t=128, x_max=6.0, out_dir=str(tmp_path))
    grid_csv, _ = make_fixture(
        "heat_kernel", alpha=0.0, out_dir=str(tmp_path), cfg=cfg, s=0.25
    )
    code = run(
        ["miyachi", "--a", "1.0", "--b", "0.05", "--delta", "1.0", "--A", "0.25",
         "--input", grid_csv, "--report", "rep.json", "--out", tmp_path]
    )
    assert code == 0
    rep = json.loads((tmp_path / "rep.json").read_text())
    assert rep["schema_version"] == 1
    assert rep["params"] == {
        "a": 1.0, "b": 0.05, "delta": 1.0, "A": 0.25, "half_width": 1.0,
    }
    assert rep["conclusion"] in {"must_vanish", "inconclusive", "hypotheses_not_met"}
    assert set(rep["hypothesis1"]) == {"fitted_C", "max_violation", "pass", "per_lambda"}
    assert set(rep["hypothesis2"]) == {
        "truncated_integrals", "divergent", "per_lambda", "delta_ladders",
    }
    assert rep["product_ab"] == pytest.approx(0.05)
    assert rep["residual_norm"] > 0.0


def test_heat_subcommand_writes_calibration(tmp_path):
    assert run(["heat", "--alpha", "0.0", "--s", "0.5", "--out", tmp_path]) == 0
    rep = json.loads((tmp_path / "heat_report.json").read_text())
    assert rep["schema_version"] == 1
    assert rep["calibration"]["kappa"] == 2.0
    assert rep["calibration"]["kappa_nominal"] == 1.0
    assert rep["gaussian_fit"]["violations"] == 0
    assert (tmp_path / "heat_kernel.csv").exists()
