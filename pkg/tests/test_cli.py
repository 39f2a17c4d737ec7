import csv
import json

import numpy as np
import pytest

from elicit import nse
from elicit.cli import main


def write_csv(path, rows, header):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


@pytest.fixture
def zy_file(tmp_path):
    def make(z, y, name="data.csv"):
        return write_csv(tmp_path / name, list(zip(y, z)), ["y", "z"])
    return make


class TestCatalog:
    def test_text_has_enough_rows(self, capsys):
        assert main(["catalog"]) == 0
        out = capsys.readouterr().out
        bij_lines = [l for l in out.splitlines()
                     if l.startswith("  ") and "elicits" in l]
        assert len(bij_lines) >= 12

    def test_json_box_cox_entry(self, capsys):
        assert main(["catalog", "--format", "json", "--family", "bijections"]) == 0
        rows = json.loads(capsys.readouterr().out)
        entry = next(r for r in rows if r["name"] == "box-cox")
        assert "exp(E[log y])" in entry["functional"]
        assert "E[y^a]^(1/a)" in entry["functional"]

    def test_seven_score_families(self, capsys):
        assert main(["catalog", "--format", "json", "--family", "scores"]) == 0
        rows = json.loads(capsys.readouterr().out)
        assert len(rows) == 7


class TestScoreCommand:
    def test_perfect_prediction(self, zy_file, capsys):
        path = zy_file([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert main(["score", "--score", "se", "--data", path,
                     "--skill", "climatology"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["average_score"] == 0.0
        assert payload["skill"] == 1.0

    def test_climatology_skill_reproduces_nse(self, zy_file, capsys):
        rng = np.random.default_rng(3)
        y = rng.uniform(1, 5, 40)
        z = y + rng.normal(0, 0.7, 40)
        path = zy_file(z.tolist(), y.tolist())
        assert main(["score", "--score", "se", "--data", path,
                     "--skill", "climatology"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["skill"] == pytest.approx(nse(z, y), abs=1e-12)

    def test_g_climatology_reference_scores_zero(self, zy_file, capsys):
        # prediction equal to the geometric-mean reference has zero skill
        path = zy_file([2.0, 2.0], [1.0, 4.0])
        assert main(["score", "--score", "se@both:log", "--data", path,
                     "--skill", "g-climatology"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["skill"] == 0.0
        assert payload["reference_value"] == 2.0

    def test_g_climatology_requires_transform(self, zy_file, capsys):
        path = zy_file([1.0], [1.0])
        assert main(["score", "--score", "se", "--data", path,
                     "--skill", "g-climatology"]) == 3

    def test_missing_column(self, tmp_path, capsys):
        path = write_csv(tmp_path / "bad.csv", [[1.0]], ["y"])
        assert main(["score", "--score", "se", "--data", path]) == 2

    def test_unparsable_cell_reports_row(self, tmp_path, capsys):
        path = write_csv(tmp_path / "bad.csv", [[1.0, 1.0], ["oops", 2.0]], ["y", "z"])
        assert main(["score", "--score", "se", "--data", path]) == 2
        assert "row 3" in capsys.readouterr().err

    def test_domain_violation_exit_code(self, zy_file, capsys):
        path = zy_file([1.0, 1.0], [1.0, -4.0])
        assert main(["score", "--score", "se@both:log", "--data", path]) == 3

    def test_bad_score_spec(self, zy_file):
        path = zy_file([1.0], [1.0])
        assert main(["score", "--score", "nope", "--data", path]) == 2

    def test_mv_needs_x2_column(self, tmp_path, capsys):
        path = write_csv(tmp_path / "mv.csv", [[0.0, 0.0, 1.0]], ["y", "z", "x2"])
        assert main(["score", "--score", "mv", "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["average_score"] == pytest.approx(-2.0)


class TestFitCommand:
    def test_constant_se(self, tmp_path, capsys):
        path = write_csv(tmp_path / "y.csv", [[1.0], [2.0], [3.0]], ["y"])
        assert main(["fit", "--model", "constant", "--score", "se",
                     "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theta"][0] == pytest.approx(2.0, abs=1e-9)
        assert payload["converged"]

    def test_constant_median(self, tmp_path, capsys):
        path = write_csv(tmp_path / "y.csv", [[1.0], [2.0], [100.0]], ["y"])
        assert main(["fit", "--model", "constant", "--score", "apl:tau=0.5",
                     "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theta"][0] == pytest.approx(2.0, abs=1e-6)

    def test_constant_geometric_mean(self, tmp_path, capsys):
        path = write_csv(tmp_path / "y.csv", [[1.0], [4.0]], ["y"])
        assert main(["fit", "--model", "constant", "--score", "se@both:log",
                     "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theta"][0] == pytest.approx(2.0, abs=1e-6)

    def test_linear(self, tmp_path, capsys):
        x = np.linspace(0, 1, 20)
        path = write_csv(tmp_path / "xy.csv",
                         [[yi, xi] for xi, yi in zip(x, 2 * x)], ["y", "x"])
        assert main(["fit", "--model", "linear", "--score", "se",
                     "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theta"][1] == pytest.approx(2.0, abs=1e-6)

    def test_mvpair(self, tmp_path, capsys):
        rng = np.random.default_rng(4)
        y = rng.normal(1.0, 2.0, 500)
        path = write_csv(tmp_path / "y.csv", [[v] for v in y], ["y"])
        assert main(["fit", "--model", "mvpair", "--score", "mv",
                     "--data", path]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["theta"][0] == pytest.approx(float(y.mean()), abs=0.01)
        assert payload["theta"][1] == pytest.approx(float(y.var()), rel=0.01)


class TestCurveCommand:
    def test_minimum_near_truth_and_roundtrip(self, tmp_path, capsys):
        out = tmp_path / "curve.csv"
        assert main(["curve", "--score", "se", "--dist", "normal(0,1)",
                     "--bracket=-2,2", "--points", "41", "--n", "20000",
                     "--seed", "5", "--out", str(out)]) == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 41
        zs = np.array([float(r["z"]) for r in rows])
        means = np.array([float(r["escore"]) for r in rows])
        ses = np.array([float(r["stderr"]) for r in rows])
        # lossless float round-trip through the CSV
        assert np.array_equal(zs, np.linspace(-2.0, 2.0, 41))
        assert abs(zs[int(np.argmin(means))]) <= 0.2
        assert np.all(ses > 0)
        # convexity of the squared-error curve: second differences >= -noise
        second = means[2:] - 2 * means[1:-1] + means[:-2]
        assert np.all(second >= -3 * ses[1:-1].max())

    def test_pinball_minimum_near_quantile(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["curve", "--score", "apl:tau=0.9", "--dist", "uniform(0,1)",
                     "--bracket", "0.5,0.999", "--points", "41", "--n", "40000",
                     "--seed", "6", "--out", str(out)]) == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        zs = [float(r["z"]) for r in rows]
        means = [float(r["escore"]) for r in rows]
        assert abs(zs[int(np.argmin(means))] - 0.9) <= 0.05


class TestVerifyCommand:
    def test_smoke_suite_passes_and_is_deterministic(self, tmp_path, capsys):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "--suite", "builtin:smoke", "--seed", "11",
                     "--out", str(f1)]) == 0
        assert main(["verify", "--suite", "builtin:smoke", "--seed", "11",
                     "--jobs", "4", "--out", str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()
        reports = json.loads(f1.read_text())
        assert all(r["pass"] for r in reports)
        assert all(r["ms"] == 0.0 for r in reports)

    def test_seed_changes_estimates(self, tmp_path):
        f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
        main(["verify", "--suite", "builtin:smoke", "--seed", "1", "--out", str(f1)])
        main(["verify", "--suite", "builtin:smoke", "--seed", "2", "--out", str(f2)])
        assert f1.read_bytes() != f2.read_bytes()

    def test_failing_check_sets_exit_code(self, tmp_path, capsys):
        suite = tmp_path / "suite.txt"
        suite.write_text(
            "name=wrong kind=consistency dist=normal(0,1) score=se "
            "functional=mean target=1.0 bracket=-2,2 n=20000 points=41\n")
        out = tmp_path / "r.json"
        assert main(["verify", "--suite", str(suite), "--seed", "3",
                     "--out", str(out)]) == 1
        reports = json.loads(out.read_text())
        assert reports[0]["pass"] is False

    def test_expected_fail_passes_suite(self, tmp_path):
        suite = tmp_path / "suite.txt"
        suite.write_text(
            "name=flat kind=strictness dist=empirical(1,1,2,2) "
            "score=gpl:tau=0.5:g=identity functional=quantile:tau=0.5 "
            "bracket=0.5,2.5 n=10000 points=51 expect=fail\n")
        assert main(["verify", "--suite", str(suite), "--seed", "3"]) == 0

    def test_malformed_suite_exit_2(self, tmp_path, capsys):
        suite = tmp_path / "suite.txt"
        suite.write_text("kind=consistency\n")
        assert main(["verify", "--suite", str(suite)]) == 2

    def test_unknown_builtin_exit_2(self):
        assert main(["verify", "--suite", "builtin:wat"]) == 2

    def test_timings_flag_breaks_byte_identity_only(self, tmp_path):
        f1 = tmp_path / "a.json"
        assert main(["verify", "--suite", "builtin:smoke", "--seed", "11",
                     "--timings", "--out", str(f1)]) == 0
        reports = json.loads(f1.read_text())
        assert any(r["ms"] > 0 for r in reports)


class TestSeedEnvVar:
    def test_elicit_seed_respected(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("ELICIT_SEED", "11")
        f_env = tmp_path / "env.json"
        assert main(["verify", "--suite", "builtin:smoke", "--out", str(f_env)]) == 0
        f_flag = tmp_path / "flag.json"
        monkeypatch.delenv("ELICIT_SEED")
        assert main(["verify", "--suite", "builtin:smoke", "--seed", "11",
                     "--out", str(f_flag)]) == 0
        assert f_env.read_bytes() == f_flag.read_bytes()


def test_usage_error_exit_code():
    assert main(["score"]) == 2
    assert main(["frobnicate"]) == 2
