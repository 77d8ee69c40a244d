import json
import subprocess
import sys

import pytest

from histree.cli import EXIT_BUG, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main
from histree.graph_io import read_graph_file


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def jrun(capsys, *argv):
    code, out, err = run(capsys, *argv, "--report", "json")
    text = out if out.strip().startswith("{") else err
    return code, json.loads(text)


@pytest.fixture
def fig1(tmp_path, capsys):
    path = tmp_path / "fig1.el"
    assert main(["generate", "figure1", "-o", str(path)]) == EXIT_OK
    capsys.readouterr()
    return str(path)


def test_generate_to_stdout(capsys):
    code, out, err = run(capsys, "generate", "gkd", "--k", "2", "--d", "3")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "# vertices: 20"
    assert "exit_code" in err


def test_generate_formats(tmp_path, capsys):
    g6 = tmp_path / "p.g6"
    code, rep = jrun(capsys, "generate", "petersen", "-o", str(g6))
    assert code == EXIT_OK and rep["input"]["n"] == 10 and rep["result"]["format"] == "g6"
    assert read_graph_file(str(g6)).graph.m == 15


def test_generate_embeds_cover_and_centres(tmp_path, capsys):
    ds = tmp_path / "ds.el"
    main(["generate", "double-star", "--m", "6", "-o", str(ds)])
    assert len(read_graph_file(str(ds)).stars) == 2
    wt = tmp_path / "wt.el"
    main(["generate", "w-tree", "--configs", "wa:1,wa:2,wab:1:2", "-o", str(wt)])
    assert len(read_graph_file(str(wt)).centres) == 3
    capsys.readouterr()


def test_build_and_verify_good(fig1, tmp_path, capsys):
    tree = tmp_path / "t.el"
    code, rep = jrun(capsys, "build", fig1, "--tree-out", str(tree))
    assert code == EXIT_OK and rep["verdicts"]["G-good"] is True
    assert rep["result"]["trace"][-1] == "base"
    code, rep = jrun(capsys, "verify", fig1, str(tree), "--check", "good")
    assert code == EXIT_OK and rep["verdicts"]["G-good"]["ok"]


def test_verify_negative(tmp_path, capsys):
    g = tmp_path / "c.el"
    main(["generate", "cycle", "--n", "6", "-o", str(g)])
    t = tmp_path / "path.el"
    t.write_text("# vertices: 6\n0 1\n1 2\n2 3\n3 4\n4 5\n")
    capsys.readouterr()
    code, rep = jrun(capsys, "verify", str(g), str(t), "--check", "deg2-independent")
    assert code == EXIT_NEGATIVE and rep["status"] == "negative"
    code, _ = jrun(capsys, "verify", str(g), str(t), "--check", "no-three-consecutive-deg2")
    assert code == EXIT_NEGATIVE
    # cycle vertices have graph degree 2, so the path is still good
    code, _ = jrun(capsys, "verify", str(g), str(t), "--check", "good")
    assert code == EXIT_OK


def test_build_star_modes(tmp_path, capsys):
    ds = tmp_path / "ds.el"
    main(["generate", "double-star", "--m", "7", "-o", str(ds)])
    capsys.readouterr()
    for extra in (["--cover", "embedded"], ["--cover", "search"]):
        code, rep = jrun(capsys, "build", str(ds), "--mode", "star-grow", *extra)
        assert code == EXIT_OK and rep["verdicts"]["degree-2 independent"]
    code, rep = jrun(capsys, "build", str(ds), "--mode", "no-adjacent-deg2")
    assert code == EXIT_OK


def test_build_no_cover_is_negative(tmp_path, capsys):
    k4 = tmp_path / "k4.el"
    main(["generate", "complete", "--n", "4", "-o", str(k4)])
    capsys.readouterr()
    code, rep = jrun(capsys, "build", str(k4), "--mode", "no-adjacent-deg2")
    assert code == EXIT_NEGATIVE and rep["status"] == "no star cover found"


def test_structure_and_w_config(tmp_path, capsys):
    f = tmp_path / "fx.el"
    main(["generate", "case-fixture", "--name", "3.2", "-o", str(f)])
    capsys.readouterr()
    code, rep = jrun(capsys, "structure", str(f), "--s", "auto+centres")
    assert code == EXIT_OK
    st = rep["result"]["structure"]
    assert st["variant"] == "W"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps(st["config"]))
    code, rep = jrun(capsys, "verify", str(f), str(cfg), "--check", "w-config")
    assert code == EXIT_OK and rep["verdicts"]["w-config"]["ok"]
    bad = dict(st["config"], centre=st["config"]["connectors"][0])
    cfg.write_text(json.dumps(bad))
    code, _ = jrun(capsys, "verify", str(f), str(cfg), "--check", "w-config")
    assert code == EXIT_NEGATIVE


def test_oracle_commands(fig1, capsys):
    code, rep = jrun(capsys, "oracle", fig1, "--count")
    assert code == EXIT_OK and rep["result"]["kirchhoff"] == 32768
    code, rep = jrun(capsys, "oracle", fig1, "--exists", "no-three-consecutive-deg2")
    assert code == EXIT_OK and rep["result"]["witness"]
    code, rep = jrun(capsys, "oracle", fig1, "--all", "deg2-independent")
    assert code == EXIT_NEGATIVE and rep["result"]["verdict"] == "false"
    code, rep = jrun(capsys, "oracle", fig1, "--sample", "adjacent-deg2-pair",
                     "--samples", "50", "--seed", "1")
    assert code == EXIT_OK and rep["result"]["verdict"] == "no-counterexample"


def test_oracle_budget(fig1, capsys, monkeypatch):
    code, rep = jrun(capsys, "oracle", fig1, "--all", "adjacent-deg2-pair", "--budget-trees", "10")
    assert code == EXIT_NEGATIVE and rep["result"]["verdict"] == "unknown"
    assert rep["result"]["truncated"]
    monkeypatch.setenv("HISTREE_BUDGET_TREES", "5")
    code, rep = jrun(capsys, "oracle", fig1, "--count")
    assert code == EXIT_NEGATIVE and rep["result"]["enumerated"] == 5


@pytest.mark.parametrize("argv", [
    [], ["nope"], ["generate", "nope"], ["oracle", "x.el"], ["generate", "gkd", "--k", "two"],
])
def test_usage_errors(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE and out == "" and "usage-error" in err


def test_input_errors(tmp_path, capsys):
    code, out, err = run(capsys, "build", str(tmp_path / "missing.el"))
    assert code == EXIT_USAGE and "input-error" in err
    bad = tmp_path / "bad.el"
    bad.write_text("# vertices: 3\n0 7\n")
    code, _, err = run(capsys, "build", str(bad))
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "oracle", str(bad), "--all", "no-such-predicate")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "generate", "gkd", "--k", "2")
    assert code == EXIT_USAGE and "missing parameter" in err


def test_reports_are_deterministic(fig1, capsys):
    def strip(rep):
        rep.pop("timing")
        return rep

    _, a = jrun(capsys, "build", fig1)
    _, b = jrun(capsys, "build", fig1)
    assert json.dumps(strip(a), sort_keys=True) == json.dumps(strip(b), sort_keys=True)


def test_text_report(fig1, capsys):
    code, out, _ = run(capsys, "oracle", fig1, "--count")
    assert code == EXIT_OK and "exit_code" in out and "kirchhoff" in out


def test_module_entry_point(fig1):
    proc = subprocess.run([sys.executable, "-m", "histree", "oracle", fig1, "--count",
                           "--report", "json"], capture_output=True, text=True)
    assert proc.returncode == EXIT_OK
    assert json.loads(proc.stdout)["result"]["enumerated"] == 32768


def test_exit_codes_distinct():
    assert len({EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUG}) == 4
