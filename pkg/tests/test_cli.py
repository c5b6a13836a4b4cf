"""Command-line interface: subcommands, exit codes, config, cache env var."""

import json
import os
import subprocess
import sys

import pytest

from pqatlas.cli import main


def run_cli(args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "pqatlas.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


class TestClassify:
    def test_liouville_point(self, capsys):
        assert main(["classify", "--n", "6", "--p", "1", "--q", "0"]) == 0
        out = capsys.readouterr().out
        assert "liouville" in out and "cond3" in out

    def test_radial_point(self, capsys):
        assert main(["classify", "--n", "6", "--p", "3", "--q", "0.5"]) == 0
        assert "radial_exists" in capsys.readouterr().out

    def test_bounded_flag(self, capsys):
        assert main(["classify", "--n", "6", "--p", "30", "--q", "1.05", "--bounded"]) == 0
        assert "liouville_bounded" in capsys.readouterr().out


class TestUsageErrors:
    def test_missing_required_flag_exits_2(self):
        r = run_cli(["classify", "--n", "6", "--p", "1"])
        assert r.returncode == 2

    def test_unknown_command_exits_2(self):
        r = run_cli(["frobnicate"])
        assert r.returncode == 2

    def test_bad_range_exits_2(self):
        r = run_cli(
            ["atlas", "--n", "6", "--p-range", "oops", "--q-range", "0:2", "--res", "4",
             "--csv", "/tmp/x.csv"]
        )
        assert r.returncode == 2


class TestCurves:
    def test_writes_csv(self, tmp_path, capsys):
        out = tmp_path / "curves.csv"
        assert main(
            ["curves", "--n", "6", "--q-min", "0", "--q-max", "1.9", "--step", "0.1",
             "--out", str(out)]
        ) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "q,l_V,g_root_lo,g_root_hi,h_root_lo,h_root_hi"
        assert len(lines) == 21
        row0 = lines[1].split(",")
        assert float(row0[1]) == pytest.approx(1.0)  # l_V(6,0)


class TestDomainSup:
    def test_prints_result(self, capsys):
        assert main(["domain-sup", "--set", "L", "--n", "6", "--q", "0.7", "--tol", "1e-9"]) == 0
        out = capsys.readouterr().out
        assert "sup=" in out and "attained=True" in out

    def test_out_of_range_exits_1(self, capsys):
        assert main(["domain-sup", "--set", "H", "--n", "6", "--q", "0.5", "--tol", "1e-9"]) == 1


class TestAtlasCommand:
    def test_writes_all_outputs(self, tmp_path, capsys):
        csv = tmp_path / "scan.csv"
        svg = tmp_path / "scan.svg"
        png = tmp_path / "scan.png"
        rc = main(
            ["atlas", "--n", "6", "--p-range=-1:4", "--q-range", "0:2", "--res", "16",
             "--csv", str(csv), "--svg", str(svg), "--png", str(png)]
        )
        assert rc == 0
        assert csv.exists() and svg.exists() and png.exists()
        assert csv.read_text().splitlines()[0] == "p,q,status,criteria"

    def test_cache_flag_writes_records(self, tmp_path):
        from pqatlas import domains

        domains.clear_sup_memo()
        csv = tmp_path / "scan.csv"
        cache = tmp_path / "memo.jsonl"
        rc = main(
            ["atlas", "--n", "6", "--p-range", "0:3", "--q-range", "0.6:1.4", "--res", "8",
             "--csv", str(csv), "--cache", str(cache)]
        )
        assert rc == 0
        assert cache.exists()
        records = [json.loads(l) for l in cache.read_text().splitlines()]
        assert records and all(r["set"] in ("D", "E") for r in records)

    def test_env_var_cache(self, tmp_path):
        from pqatlas import domains

        domains.clear_sup_memo()
        cache = tmp_path / "envmemo.jsonl"
        env = dict(os.environ, PQL_CACHE=str(cache))
        r = run_cli(
            ["atlas", "--n", "6", "--p-range", "0:3", "--q-range", "0.6:1.4", "--res", "8",
             "--csv", str(tmp_path / "s.csv")],
            env=env,
        )
        assert r.returncode == 0
        assert cache.exists()


class TestVerify:
    def test_verify_algebra_s3quad(self, capsys):
        assert main(["verify-algebra", "--lemma", "s3quad"]) == 0
        assert "mismatch" in capsys.readouterr().out

    def test_verify_algebra_json(self, capsys):
        assert main(["verify-algebra", "--lemma", "s3quad", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["ok"] is True and data["entries"]

    def test_verify_identity(self, capsys):
        rc = main(["verify-identity", "--n", "3", "--q", "1/2", "--samples", "5"])
        assert rc == 0
        out = capsys.readouterr().out
        assert "pass" in out and "FAIL" not in out

    def test_verify_identity_fixed_pair(self, capsys):
        rc = main(["verify-identity", "--n", "6", "--q", "1/4", "--beta", "1/2",
                   "--sigma=-1/3", "--samples", "1"])
        assert rc == 0


class TestShootThreshold:
    def test_shoot(self, capsys):
        assert main(["shoot", "--n", "3", "--p", "3", "--q", "0", "--u0", "1",
                     "--rmax", "50", "--tol", "1e-10"]) == 0
        assert "hits_zero" in capsys.readouterr().out

    def test_threshold(self, capsys):
        assert main(["threshold", "--n", "4", "--q", "0", "--p-lo", "2", "--p-hi", "6",
                     "--ptol", "1e-2"]) == 0
        out = capsys.readouterr().out
        assert "p_star=" in out and "predicted=3" in out

    def test_threshold_bad_bracket_exits_1(self, capsys):
        assert main(["threshold", "--n", "3", "--q", "0", "--p-lo", "6", "--p-hi", "8",
                     "--ptol", "1e-2"]) == 1


class TestConfig:
    def test_config_provides_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "pq.cfg"
        cfg.write_text("# defaults\nn = 6\np = 1\nq = 0\n")
        assert main(["--config", str(cfg), "classify"]) == 0
        assert "cond3" in capsys.readouterr().out

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "pq.cfg"
        cfg.write_text("n = 6\np = 1\nq = 0\n")
        assert main(["--config", str(cfg), "classify", "--p", "3", "--q", "0.5"]) == 0
        assert "radial_exists" in capsys.readouterr().out

    def test_bad_config_exits_2(self, tmp_path):
        cfg = tmp_path / "pq.cfg"
        cfg.write_text("this is not a key value line\n")
        assert main(["--config", str(cfg), "classify", "--n", "6", "--p", "1", "--q", "0"]) == 2
