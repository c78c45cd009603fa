import json
import os
from pathlib import Path

import pytest

from wmwauc import pseudomedian_ci, validate, wmw_test
from wmwauc.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, main

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden_test_report.json"
GOLDEN_ARGS = ["test", "--x", "golden_x.csv", "--y", "golden_y.csv", "--value-col", "value",
               "--a0", "0.45", "--alpha", "0.1", "--json"]


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(path, values, header="value"):
    path.write_text(header + "\n" + "".join(f"{v}\n" for v in values))
    return str(path)


@pytest.fixture
def pair(tmp_path):
    return write(tmp_path / "a.csv", [1, 2, 3]), write(tmp_path / "b.csv", [1, 2, 3])


class TestGolden:
    def test_byte_identical(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        code, out, _ = run(capsys, *GOLDEN_ARGS)
        assert code == EXIT_OK
        if os.environ.get("WMWAUC_RECORD_GOLDEN"):
            GOLDEN.write_text(out)
        assert out == GOLDEN.read_text()

    def test_repeat_runs(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        assert run(capsys, *GOLDEN_ARGS)[1] == run(capsys, *GOLDEN_ARGS)[1]

    def test_floats_round_trip(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        rep = json.loads(run(capsys, *GOLDEN_ARGS)[1])
        x = [float(v) for v in (DATA / "golden_x.csv").read_text().split()[1:]]
        y = [float(v) for v in (DATA / "golden_y.csv").read_text().split()[1:]]
        r = wmw_test(validate(x, y), a0=0.45, alpha=0.1)
        assert rep["result"]["p_value"] == r.p_value
        assert rep["result"]["ci"] == [r.ci_lo, r.ci_hi]
        assert list(rep) == ["schema_version", "command", "input", "result", "warnings"]
        assert rep["schema_version"] == "1"


class TestTestCommand:
    def test_identical_samples(self, capsys, pair):
        code, out, _ = run(capsys, "test", "--x", pair[0], "--y", pair[1])
        rep = json.loads(out)
        assert code == EXIT_OK
        assert rep["result"]["p_value"] == 1.0 and rep["result"]["a_hat"] == 0.5
        for key in ("a_hat", "se", "df", "statistic", "p_value", "ci", "method"):
            assert key in rep["result"]

    def test_bc_with_ties(self, capsys, tmp_path):
        x = write(tmp_path / "x.csv", [1, 2, 5])
        y = write(tmp_path / "y.csv", [2, 3, 4])
        code, _, err = run(capsys, "test", "--x", x, "--y", y, "--method", "bc")
        assert code == EXIT_DATA
        assert "ties present: BC requires continuous data" in err

    def test_text_matches_json(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        rep = json.loads(run(capsys, *GOLDEN_ARGS)[1])
        text = run(capsys, *GOLDEN_ARGS[:-1], "--text")[1]
        for key in ("a_hat", "se", "df", "statistic", "p_value"):
            assert f"  {key}: {rep['result'][key]}\n" in text

    def test_single_file_mode(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        two = json.loads(run(capsys, *GOLDEN_ARGS)[1])["result"]
        one = json.loads(run(capsys, "test", "--data", "grouped.csv", "--group-col", "arm",
                             "--value-col", "score", "--a0", "0.45", "--alpha", "0.1")[1])
        assert one["result"] == two
        assert one["input"]["x_label"] == "control"

    def test_single_file_labels(self, capsys, monkeypatch):
        monkeypatch.chdir(DATA)
        rep = json.loads(run(capsys, "test", "--data", "grouped.csv", "--group-col", "arm",
                             "--value-col", "score", "--x-label", "treated",
                             "--y-label", "control")[1])
        assert rep["input"]["n1"] == 19

    def test_three_groups(self, capsys, tmp_path):
        p = tmp_path / "g.csv"
        p.write_text("g,v\na,1\nb,2\nc,3\na,4\nb,5\n")
        code, _, err = run(capsys, "test", "--data", str(p), "--group-col", "g", "--value-col", "v")
        assert code == EXIT_DATA and "exactly two labels" in err

    def test_bad_rows(self, capsys, tmp_path):
        x = write(tmp_path / "x.csv", [1, "oops", 3, 4])
        y = write(tmp_path / "y.csv", [2, 5, 6])
        assert run(capsys, "test", "--x", x, "--y", y)[0] == EXIT_DATA
        code, out, _ = run(capsys, "test", "--x", x, "--y", y, "--skip-bad")
        rep = json.loads(out)
        assert code == EXIT_OK and rep["input"]["skipped_rows"] == 1 and rep["input"]["n1"] == 3

    def test_no_header_delimiter(self, capsys, tmp_path):
        x = tmp_path / "x.txt"
        y = tmp_path / "y.txt"
        x.write_text("0;1\n0;2\n0;3\n")
        y.write_text("0;1\n0;2\n0;3\n")
        code, out, _ = run(capsys, "test", "--x", str(x), "--y", str(y), "--no-header",
                           "--delimiter", ";", "--value-col", "1")
        assert code == EXIT_OK and json.loads(out)["result"]["a_hat"] == 0.5

    @pytest.mark.parametrize("argv", [
        ["test"],
        ["test", "--x", "a.csv"],
        ["test", "--method", "magic"],
        [],
        ["test", "--x", "a", "--y", "b", "--a0", "2"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == EXIT_USAGE

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "test", "--x", str(tmp_path / "no.csv"), "--y", str(tmp_path / "no.csv"))[0] \
            == EXIT_DATA

    def test_empty_sample(self, capsys, tmp_path):
        x = write(tmp_path / "x.csv", [])
        y = write(tmp_path / "y.csv", [1, 2])
        assert run(capsys, "test", "--x", x, "--y", y)[0] == EXIT_DATA


class TestPseudomedianCommand:
    def test_three_by_three(self, capsys, tmp_path):
        x = write(tmp_path / "x.csv", [1, 2, 3])
        y = write(tmp_path / "y.csv", [0, 1, 2])
        code, out, _ = run(capsys, "pseudomedian", "--x", x, "--y", y, "--grid-k", "64")
        rep = json.loads(out)
        assert code == EXIT_OK and rep["result"]["theta_hat"] == 1.0
        r = pseudomedian_ci(validate([1, 2, 3], [0, 1, 2]), grid_k=64)
        assert rep["result"]["ci"] == [r.ci_lo, r.ci_hi]

    def test_zero_scale(self, capsys, tmp_path):
        x = write(tmp_path / "x.csv", [4, 4, 4])
        y = write(tmp_path / "y.csv", [1, 1, 1])
        code, out, _ = run(capsys, "pseudomedian", "--x", x, "--y", y)
        rep = json.loads(out)
        assert code == EXIT_OK and rep["result"]["ci"] == [3.0, 3.0]
        assert any(w.startswith("ZeroScale") for w in rep["warnings"])

    def test_missing_input(self, capsys):
        assert run(capsys, "pseudomedian")[0] == EXIT_USAGE


class TestSimulateCommand:
    def test_mean_sd_preset_small(self, capsys):
        code, out, _ = run(capsys, "simulate", "--preset", "paper-s2", "--reps", "500", "--seed", "42")
        rep = json.loads(out)
        assert code == EXIT_OK
        assert abs(rep["result"]["mean_a_hat"] - 0.5) <= 3 * 0.0158 / 500**0.5

    def test_deterministic(self, capsys):
        argv = ["simulate", "--preset", "equal-normals", "--reps", "1", "--seed", "7"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_thread_flag(self, capsys):
        argv = ["simulate", "--preset", "tied-normals", "--reps", "20", "--seed", "3"]
        assert run(capsys, *argv, "--threads", "1")[1] == run(capsys, *argv, "--threads", "4")[1]

    def test_explicit_generators(self, capsys):
        code, out, _ = run(capsys, "simulate", "--gen-x", "uniform(0, 1)", "--gen-y", "point-mass(2)",
                           "--n1", "5", "--n2", "4", "--reps", "10")
        assert code == EXIT_OK and json.loads(out)["result"]["mean_a_hat"] == 1.0

    @pytest.mark.parametrize("argv", [
        ["simulate", "--preset", "nonsense"],
        ["simulate", "--gen-x", "normal(0, 1)"],
        ["simulate", "--gen-x", "normal(0)", "--gen-y", "normal(0, 1)", "--n1", "3", "--n2", "3"],
    ])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == EXIT_USAGE
