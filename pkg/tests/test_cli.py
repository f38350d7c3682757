import json

import pytest

from dicecontrol import golden
from dicecontrol.cli import main
from dicecontrol.simulation import HandSample


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_model_report(capsys):
    data = run_json(capsys, "model", "--model", "ss", "--theta", "1")
    assert data["mean_length"] == pytest.approx(296 / 27)
    assert data["recip7"] == pytest.approx(8.0)
    assert len(data["rows"]) == 11
    data = run_json(capsys, "model", "--model", "ws", "--eta", "0.05", "--param", "gain")
    assert data["theta"] == pytest.approx(0.139835, abs=1e-5)


def test_model_text_output(capsys):
    code, out, _ = run(capsys, "model", "--model", "ss", "--theta", "0")
    assert code == 0
    assert "mean_length: 8.5255" in out and "gain: -0.0141" in out


@pytest.mark.parametrize("argv, fragment", [
    (["model", "--model", "ss", "--eta", "7"], "--param"),
    (["model", "--model", "ss", "--theta", "0.2", "--param", "gain"], "--theta"),
    (["model", "--model", "ss", "--eta", "9", "--param", "recip7"], "outside"),
    (["power", "--test", "lbar", "--eta", "0.05", "--param", "gain", "--n", "500"], "--model"),
    (["power", "--n", "10"], "--table or --test"),
    (["dist", "--model", "ws", "--theta", "0", "--tail-at", "1"], "--tail-at"),
    (["verify", "--check", "nonsense"], "unknown check"),
])
def test_bad_flags_exit_2(capsys, argv, fragment):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert fragment in err


def test_theta_and_eta_are_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["model", "--model", "ss", "--theta", "0.1", "--eta", "7", "--param", "recip7"])
    assert exc.value.code == 2


def test_dist_tail(capsys):
    data = run_json(capsys, "dist", "--model", "ws", "--theta", "0.375", "--tail-at", "154")
    assert data["reciprocal_tail"] == pytest.approx(1.307e7, rel=1e-3)
    data = run_json(capsys, "dist", "--model", "ss", "--theta", "0", "--x-max", "5")
    assert [r["x"] for r in data["rows"]] == [2, 3, 4, 5]
    assert data["e1"] == pytest.approx(0.862473751659322)


def test_power_queries(capsys):
    data = run_json(capsys, "power", "--test", "lbar", "--model", "ws", "--eta", "0.025",
                    "--param", "gain", "--n", "500")
    assert data["power"] == pytest.approx(0.4554, abs=5e-4)
    data = run_json(capsys, "power", "--test", "lbar", "--model", "ss", "--eta", "6",
                    "--param", "recip7", "--n", "500")
    assert data["power"] == pytest.approx(0.05, abs=1e-12)
    data = run_json(capsys, "power", "--test", "prop7", "--eta", "6.25", "--param", "recip7",
                    "--n", "500", "--per-hand")
    assert data["power"] == pytest.approx(0.2560, abs=5e-4)
    data = run_json(capsys, "power", "--test", "passline", "--model", "ws", "--eta", "0.025",
                    "--param", "gain", "--n", "500", "--per-hand", "--null", "composite")
    assert data["power"] == pytest.approx(0.2297, abs=5e-4)


def test_power_table_text(capsys):
    code, out, _ = run(capsys, "power", "--table", "2")
    assert code == 0 and "0.3556" in out and "0.4038" in out
    code, out, _ = run(capsys, "power", "--table", "1", "--format", "csv")
    assert code == 0 and "0.0823" in out


def test_simulate_is_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for path in paths:
        code, _, _ = run(capsys, "simulate", "--model", "ws", "--theta", "0", "--n", "10",
                         "--seed", "7", "-o", str(path))
        assert code == 0
    assert paths[0].read_text() == paths[1].read_text()
    assert HandSample.read(paths[0]).n == 10


def test_simulate_uses_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("DICECONTROL_SEED", "7")
    _, from_env, err = run(capsys, "simulate", "--model", "ss", "--theta", "0.2", "--n", "25")
    assert "warning" not in err
    _, from_flag, _ = run(capsys, "simulate", "--model", "ss", "--theta", "0.2", "--n", "25",
                          "--seed", "7")
    assert from_env == from_flag
    monkeypatch.delenv("DICECONTROL_SEED")
    _, _, err = run(capsys, "simulate", "--model", "ss", "--theta", "0.2", "--n", "25")
    assert "warning" in err


def test_simulated_lines_round_trip(capsys):
    _, out, _ = run(capsys, "simulate", "--model", "ss", "--theta", "0.5", "--n", "40",
                    "--seed", "1", "--sample-format", "lines")
    _, js, _ = run(capsys, "simulate", "--model", "ss", "--theta", "0.5", "--n", "40",
                   "--seed", "1")
    assert HandSample.parse(out) == HandSample.parse(js)


def test_lrtest_worked_example(capsys, tmp_path):
    path = tmp_path / "eq.json"
    path.write_text(HandSample.from_run_length(golden.WORKED_EXAMPLE["counts"]).to_json())
    data = run_json(capsys, "lrtest", "--model", "ss", "--sample", str(path))
    assert data["statistic"] == pytest.approx(2.12142, abs=1e-3)
    assert data["reject"] is False and data["n"] == 500


def test_lrtest_bad_sample(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("4\n5\nabc\n")
    code, _, err = run(capsys, "lrtest", "--model", "ss", "--sample", str(path))
    assert code == 2 and "line 3" in err
    code, _, err = run(capsys, "lrtest", "--model", "ss", "--sample", str(tmp_path / "missing"))
    assert code == 2 and "cannot read" in err


def test_lrpower_small(capsys):
    args = ("lrpower", "--model", "ss", "--theta", "0.3", "--n", "100", "--reps", "300",
            "--seed", "2")
    first = run_json(capsys, *args)
    assert first == run_json(capsys, *args)
    assert 0 < first["power"] < 1


def test_verify_subset(capsys):
    code, out, _ = run(capsys, "verify", "--check", "constants", "combinatorics")
    assert code == 0 and out.count("True") == 2
