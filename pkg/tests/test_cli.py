import json

import pytest

from nevlab import cli
from nevlab.catalog import catalog_entry
from nevlab.model_space import CohnReport


def _write(tmp_path, name, cfg):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def _lp_config(tmp_path, **extra):
    cfg = {"version": "1", "task": "verify-lp", "f": [1.0, 2.0, 3.0]}
    cfg.update(extra)
    return _write(tmp_path, "lp.json", cfg)


class TestExitCodes:
    def test_pass_is_zero(self, tmp_path, capsys):
        rc = cli.main(["--config", _lp_config(tmp_path)])
        assert rc == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True

    def test_check_failure_is_one(self, tmp_path, capsys):
        rc = cli.main(["--config", _lp_config(tmp_path), "--tol", "1e-30"])
        assert rc == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is False

    def test_config_error_is_two(self, tmp_path, capsys):
        path = _write(tmp_path, "bad.json",
                      {"version": "1", "task": "verify-lp"})
        rc = cli.main(["--config", path])
        assert rc == 2
        assert "'f'" in capsys.readouterr().err

    def test_missing_config_flag(self, capsys):
        assert cli.main(["verify-lp"]) == 2

    def test_unreadable_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{nope")
        assert cli.main(["--config", str(path)]) == 2

    def test_nonconvergence_is_three(self, tmp_path, monkeypatch, capsys):
        cfg = {"version": "1", "task": "cohn", "p": 0.5, "f": [0.0, 1.0],
               "theta": {"blaschke": {"zeros": [[0.0, 0.0]]}}}
        path = _write(tmp_path, "cohn.json", cfg)
        monkeypatch.setattr(
            cli, "cohn_functional",
            lambda *a, **k: CohnReport(value=1.0, converged=False,
                                       increments=[1.0, 0.9]))
        rc = cli.main(["--config", path])
        assert rc == 3
        payload = json.loads(capsys.readouterr().out)
        assert payload["converged"] is False

    def test_expect_mismatch_is_one(self, tmp_path, capsys):
        cfg = dict(catalog_entry("half-map-atom").config)
        cfg["expect"] = "NonCompact"
        path = _write(tmp_path, "bad-expect.json", cfg)
        assert cli.main(["--config", path]) == 1


class TestOutputs:
    def test_out_file_and_stdout_agree(self, tmp_path, capsys):
        path = _lp_config(tmp_path)
        rc = cli.main(["--config", path])
        stdout_text = capsys.readouterr().out
        out = tmp_path / "result.json"
        rc = cli.main(["--config", path, "--out", str(out)])
        assert rc == 0
        assert out.read_text() == stdout_text

    def test_byte_identical_reruns(self, tmp_path):
        cfg = dict(catalog_entry("half-map-atom").config)
        path = _write(tmp_path, "crit.json", cfg)
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert cli.main(["--config", path, "--out", str(a)]) == 0
        assert cli.main(["--config", path, "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_counting_csv_format(self, tmp_path, capsys):
        cfg = {"version": "1", "task": "counting",
               "phi": {"kind": "polynomial", "coefficients": [0.0, 0.0, 1.0]},
               "points": [[0.5, 0.0], [0.0, 0.25]]}
        path = _write(tmp_path, "count.json", cfg)
        assert cli.main(["--config", path]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "w_re,w_im,value"
        assert len(lines) == 3
        for line in lines[1:]:
            cells = line.split(",")
            assert len(cells) == 3
            # 12 decimal places in scientific notation
            for cell in cells:
                mantissa = cell.split("e")[0]
                assert len(mantissa.split(".")[1]) == 12

    def test_counting_polar_csv(self, tmp_path, capsys):
        cfg = {"version": "1", "task": "counting",
               "phi": {"kind": "polynomial", "coefficients": [0.0, 0.0, 1.0]},
               "radii": [0.5], "angular_count": 8}
        path = _write(tmp_path, "sweep.json", cfg)
        assert cli.main(["--config", path]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "r,theta,value"
        assert len(lines) == 9

    def test_profile_round_trip_through_json(self, tmp_path, capsys):
        from nevlab.criterion import CriterionProfile, compactness_verdict

        cfg = dict(catalog_entry("half-map-atom").config)
        path = _write(tmp_path, "crit.json", cfg)
        assert cli.main(["--config", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        prof = CriterionProfile.from_dict(payload["profile"])
        assert compactness_verdict(prof, 0.05).verdict == payload["verdict"]

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        path = _lp_config(tmp_path)
        out = tmp_path / "result.json"
        cli.main(["--config", path, "--out", str(out)])
        leftovers = [p for p in tmp_path.iterdir()
                     if p.name.startswith(".nevlab-")]
        assert not leftovers


class TestCatalogListing:
    def test_list_catalog(self, capsys):
        assert cli.main(["--list-catalog"]) == 0
        out = capsys.readouterr().out
        for name in ("half-map-atom", "square-map-atom", "identity-map-z4",
                     "ball-slice-first-coord"):
            assert name in out


class TestSeedOverride:
    def test_seed_changes_sphere_sample(self, tmp_path, capsys):
        cfg = {"version": "1", "task": "counting",
               "phi": {"kind": "polynomial", "d": 2,
                       "terms": [{"alpha": [1, 0], "coeff": 1.0}]},
               "points": [[0.5, 0.0]], "sphere_n": 500}
        path = _write(tmp_path, "avg.json", cfg)
        assert cli.main(["--config", path]) == 0
        first = capsys.readouterr().out
        assert cli.main(["--config", path, "--seed", "1"]) == 0
        second = capsys.readouterr().out
        assert first != second
        assert cli.main(["--config", path, "--seed", "0"]) == 0
        assert capsys.readouterr().out == first
