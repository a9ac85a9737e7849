import json
import os

from conftest import run_cli

from rootpade import serialize
from rootpade.cli import main, run_verification_suite


class TestConstruct:
    def test_general_system_roundtrip(self):
        res = run_cli("construct", "--omega", "0,1/2", "--rho", "1,1",
                      "--len", "4")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["system"]["A"] == [[["2", "1"]], [["-2", "1"]]]
        assert payload["remainder_prefix"] == [
            ["0", "1"], ["1", "1"], ["1", "4"], ["1", "8"]]
        ps = serialize.parse_pade_system(payload["system"])
        assert serialize.pade_system_json(ps) == payload["system"]

    def test_specialized_matrix_roundtrip(self):
        res = run_cli("construct", "--n", "3", "--m", "2", "--rho", "1")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        sys_ = serialize.parse_nth_root_system(payload)
        assert serialize.nth_root_system_json(sys_) == payload

    def test_invalid_system_exit_2(self):
        res = run_cli("construct", "--omega", "0,1", "--rho", "1,1")
        assert res.returncode == 2
        assert "INVALID_SYSTEM" in res.stderr

    def test_missing_args_exit_2(self):
        res = run_cli("construct")
        assert res.returncode == 2


class TestVerify:
    def test_small_grid_passes(self):
        res = run_cli("verify", "--max-n", "3", "--max-rho", "2",
                      "--random", "3")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert all(item["pass"] for item in payload["checks"])

    def test_failure_exit_code(self, monkeypatch):
        import rootpade.cli as cli
        monkeypatch.setattr(
            cli, "run_verification_suite",
            lambda **kw: {"checks": [{"name": "stub", "pass": False,
                                      "detail": ""}]})
        assert main(["verify"]) == 1


class TestDelta:
    def test_roundtrip(self):
        res = run_cli("delta", "--omega", "0,1/2", "--rho", "1,1")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert serialize.parse_frac(payload["determinant"]) == \
            serialize.parse_frac(["4", "3"])
        assert serialize.parse_frac(payload["magnitude_ratio"]) == 3


class TestTheta:
    def test_worked_values(self):
        res = run_cli("theta", "--a", "2", "--b", "1", "--n", "3", "--m", "2",
                      "--p1", "5", "--q1", "4", "--p2", "29", "--q2", "23")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["rho"] == 2
        assert payload["diagnostic_rho1"]["pair_value"] == ["-9", "2875"]
        assert payload["sum_exceeds_two"] and payload["max_exceeds_one"]
        iv = serialize.parse_interval(payload["theta1"])
        assert iv.lo <= iv.hi

    def test_out_of_band_exit_2(self):
        res = run_cli("theta", "--a", "2", "--b", "1", "--n", "3", "--m", "2",
                      "--p1", "1", "--q1", "1", "--p2", "29", "--q2", "23")
        assert res.returncode == 2


class TestCertify:
    def test_deterministic_bytes_across_runs(self):
        args = ("certify", "--a", "2", "--b", "1", "--n", "3", "--m", "2",
                "--eps", "1/2")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout

    def test_mu_value(self):
        res = run_cli("certify", "--a", "2", "--b", "1", "--n", "3",
                      "--m", "2", "--eps", "1/2")
        payload = json.loads(res.stdout)
        assert serialize.parse_frac(payload["mu"]) == 3
        assert payload["version"] == "1"
        assert int(payload["thresholds"]["Q1min"]) > 0

    def test_bad_eps_exit_2(self):
        res = run_cli("certify", "--a", "2", "--b", "1", "--n", "3",
                      "--m", "2", "--eps", "0")
        assert res.returncode == 2

    def test_not_degree_n_exit_2(self):
        res = run_cli("certify", "--a", "8", "--b", "1", "--n", "3",
                      "--m", "2", "--eps", "1/2")
        assert res.returncode == 2
        assert "NOT_DEGREE_N" in res.stderr


class TestHunt:
    def test_report_roundtrip(self):
        res = run_cli("hunt", "--a", "2", "--b", "1", "--n", "3", "--m", "2",
                      "--depth", "8")
        assert res.returncode == 0
        payload = json.loads(res.stdout)
        assert payload["violations"] == []
        assert len(payload["convergents"]) == 8
        row = payload["convergents"][2]
        assert (row["p"], row["q"]) == ("5", "4")
        assert float.fromhex(row["err_lo_hex"]) <= float.fromhex(row["err_hi_hex"])


class TestGlobalFlags:
    def test_text_format(self):
        res = run_cli("delta", "--omega", "0,1/3", "--rho", "1,1",
                      "--format", "text")
        assert res.returncode == 0
        assert "determinant delta = 9/8" in res.stdout

    def test_out_file(self, tmp_path):
        out = tmp_path / "delta.json"
        res = run_cli("delta", "--omega", "0,1/2", "--rho", "1,1",
                      "--out", str(out))
        assert res.returncode == 0 and res.stdout == ""
        assert json.loads(out.read_text())["determinant"] == ["4", "3"]

    def test_prec_validation(self):
        res = run_cli("hunt", "--a", "2", "--b", "1", "--n", "3", "--m", "2",
                      "--prec", "16")
        assert res.returncode == 2


class TestConfig:
    def test_env_config_applies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"format": "text"}))
        res = run_cli("delta", "--omega", "0,1/2", "--rho", "1,1",
                      env_extra={"ROOTPADE_CONFIG": str(cfg)})
        assert res.returncode == 0
        assert "determinant delta" in res.stdout

    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"formatt": "text"}))
        res = run_cli("delta", "--omega", "0,1/2", "--rho", "1,1",
                      env_extra={"ROOTPADE_CONFIG": str(cfg)})
        assert res.returncode == 2
        assert "unknown config key" in res.stderr


class TestReportPath:
    def test_writes_csv_and_figures(self, tmp_path):
        res = run_cli("report", "--out-dir", str(tmp_path), "--depth", "6",
                      "--max-rho", "3")
        assert res.returncode == 0
        names = sorted(os.listdir(tmp_path))
        assert any(n.endswith(".csv") for n in names)
        assert any(n.endswith(".png") for n in names)
        csvs = [n for n in names if n.endswith(".csv")]
        for name in csvs:
            body = (tmp_path / name).read_text().splitlines()
            assert len(body) >= 2 and "," in body[0]


class TestSuiteInProcess:
    def test_verification_suite_structure(self):
        report = run_verification_suite(max_n=3, max_m=2, max_rho=1,
                                        random_count=2)
        names = {item["name"] for item in report["checks"]}
        assert "triple-construction agreement" in names
        assert all(item["pass"] for item in report["checks"])
