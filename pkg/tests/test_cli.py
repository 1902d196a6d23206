"""Command-line contract: flags, exit codes, CSV emission, validation runner."""

import subprocess
import sys

import numpy as np
import pytest

from vacpair import cli, fit_powerlaw, validate
from vacpair.entanglement import concurrence_full
from vacpair.model import pair_from_alignment

HYDROGEN_NEAR_10A0 = 0.0014798105528177165


def run_cli(args):
    return cli.main(list(args))


def run_subprocess(args):
    return subprocess.run([sys.executable, "-m", "vacpair.cli", *args],
                          capture_output=True, text=True)


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    return header, rows


def parse_point_report(text):
    values = {}
    for ln in text.splitlines():
        if "=" in ln and not ln.startswith("#"):
            key, _, val = ln.partition("=")
            values[key.strip()] = val.strip()
    return values


class TestPoint:
    def test_hydrogen_preset(self, capsys):
        code = run_cli(["point", "--preset", "hydrogen-1s2p", "--r", "10",
                        "--units", "atomic"])
        out = capsys.readouterr().out
        assert code == 0
        values = parse_point_report(out)
        near = float(values["concurrence_near"].split()[0])
        assert near == pytest.approx(HYDROGEN_NEAR_10A0, rel=1e-10)
        assert near == pytest.approx(1.48e-3, rel=1e-2)
        assert values["validity"].split()[0] == "OK"

    def test_decoupled_pair(self, capsys):
        code = run_cli(["point", "--mu", "0", "--x", "1"])
        out = capsys.readouterr().out
        assert code == 0
        values = parse_point_report(out)
        for key in ("concurrence_full", "concurrence_near", "concurrence_far",
                    "eof"):
            assert float(values[key].split()[0]) == 0.0

    def test_negative_x_is_usage_error(self, capsys):
        assert run_cli(["point", "--mu", "1e-4", "--x", "-1"]) == 2
        assert capsys.readouterr().err != ""

    def test_missing_coupling_is_usage_error(self):
        assert run_cli(["point", "--x", "1"]) == 2

    def test_conflicting_coupling_is_usage_error(self):
        assert run_cli(["point", "--x", "1", "--mu", "1e-4",
                        "--preset", "hydrogen-1s2p"]) == 2

    def test_invalid_regime_still_reports(self, capsys):
        code = run_cli(["point", "--mu", "1", "--x", "0.01"])
        out = capsys.readouterr().out
        assert code == 0
        assert "INVALID" in out

    def test_si_units(self, capsys):
        bohr_m = 5.29177210903e-11
        code = run_cli(["point", "--preset", "hydrogen-1s2p",
                        "--r", str(10 * bohr_m), "--units", "si"])
        out = capsys.readouterr().out
        assert code == 0
        values = parse_point_report(out)
        assert float(values["r_over_a0"]) == pytest.approx(10.0, rel=1e-12)


class TestSweep:
    def test_two_point_degenerate(self, capsys):
        code = run_cli(["sweep", "--mu", "1e-4", "--xmin", "1", "--xmax", "2",
                        "--points", "2"])
        out = capsys.readouterr().out
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 2

    def test_monotone_concurrence_on_log_sweep(self, tmp_path):
        path = tmp_path / "sweep.csv"
        code = run_cli(["sweep", "--mu", "1e-4", "--xmin", "1e-2",
                        "--xmax", "1e2", "--points", "81",
                        "--output", str(path)])
        assert code == 0
        _, rows = parse_csv(path.read_text())
        assert len(rows) == 81
        values = [float(r["concurrence_full"]) for r in rows]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_near_zone_slope_from_emitted_csv(self, tmp_path):
        path = tmp_path / "near.csv"
        run_cli(["sweep", "--mu", "1e-4", "--xmin", "0.005", "--xmax", "0.02",
                 "--points", "9", "--output", str(path)])
        _, rows = parse_csv(path.read_text())
        curve = [(float(r["x"]), float(r["concurrence_full"])) for r in rows]
        fit = fit_powerlaw(curve, (0.005, 0.02))
        assert fit.slope == pytest.approx(-3.0, abs=0.1)

    def test_round_trip_bit_exact(self, tmp_path):
        path = tmp_path / "rt.csv"
        run_cli(["sweep", "--mu", "3e-4", "--xmin", "0.1", "--xmax", "30",
                 "--points", "7", "--output", str(path)])
        _, rows = parse_csv(path.read_text())
        for row in rows:
            x = float(row["x"])
            cfg = pair_from_alignment(x, 3e-4, 1.0, 0.0)
            assert concurrence_full(cfg).raw == float(row["concurrence_full"])
            assert cfg.mu * 1.0 / x**3 == float(row["concurrence_near"])

    def test_column_subset(self, capsys):
        code = run_cli(["sweep", "--mu", "1e-4", "--xmin", "1", "--xmax", "2",
                        "--points", "2", "--columns", "x,eof"])
        out = capsys.readouterr().out
        assert code == 0
        header, rows = parse_csv(out)
        assert header == ["x", "eof"]
        assert set(rows[0]) == {"x", "eof"}

    def test_unknown_column_is_usage_error(self):
        assert run_cli(["sweep", "--mu", "1e-4", "--xmin", "1", "--xmax", "2",
                        "--points", "2", "--columns", "x,bogus"]) == 2

    def test_bad_range_is_usage_error(self):
        assert run_cli(["sweep", "--mu", "1e-4", "--xmin", "2", "--xmax", "1",
                        "--points", "5"]) == 2
        assert run_cli(["sweep", "--mu", "1e-4", "--xmin", "1", "--xmax", "2",
                        "--points", "1"]) == 2


class TestConfigFile:
    def test_config_file_supplies_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("mu = 1e-4\ndipole-a = 0,1,0\n")
        code = run_cli(["point", "--x", "1", "--config", str(cfg)])
        out = capsys.readouterr().out
        assert code == 0
        assert parse_point_report(out)["mu"].startswith("0.0001")

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("mu = 1e-4\n")
        code = run_cli(["point", "--x", "1", "--mu", "5e-4",
                        "--config", str(cfg)])
        out = capsys.readouterr().out
        assert code == 0
        assert float(parse_point_report(out)["mu"]) == 5e-4

    def test_environment_default(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "env.cfg"
        cfg.write_text("mu = 2e-4\n")
        monkeypatch.setenv("VACPAIR_CONFIG", str(cfg))
        code = run_cli(["point", "--x", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert float(parse_point_report(out)["mu"]) == 2e-4

    def test_malformed_config(self, tmp_path):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("mu 1e-4\n")
        assert run_cli(["point", "--x", "1", "--config", str(cfg)]) == 2


class TestArgparseContract:
    def test_unknown_flag_exits_2(self):
        proc = run_subprocess(["point", "--bogus", "1"])
        assert proc.returncode == 2
        assert proc.stderr.strip() != ""

    def test_no_command_exits_2(self):
        proc = run_subprocess([])
        assert proc.returncode == 2
        assert proc.stderr.strip() != ""

    def test_version(self):
        proc = run_subprocess(["--version"])
        assert proc.returncode == 0


class TestValidateCommand:
    def test_fast_level_passes(self, capsys):
        code = run_cli(["validate", "--level", "fast"])
        out = capsys.readouterr().out
        assert code == 0
        assert "checks passed" in out
        assert "[FAIL]" not in out

    def test_perturbed_kernel_is_caught(self, capsys, monkeypatch):
        from vacpair import kernel

        original = kernel.contracted_tensor

        def perturbed(x, cos_ab, proj_product):
            return original(x, cos_ab, proj_product) * (1.0 + 1e-3)

        monkeypatch.setattr(kernel, "contracted_tensor", perturbed)
        code = run_cli(["validate", "--level", "fast"])
        out = capsys.readouterr().out
        assert code == 1
        failing = [ln for ln in out.splitlines() if ln.startswith("[FAIL]")]
        assert any("contracted_tensor" in ln and "modesum" in ln
                   for ln in failing)
