import json

import pytest

from nablakit import ramsey
from nablakit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def test_cubic_file_is_infeasible(tmp_path, capsys):
    h = tmp_path / "h.csv"
    h.write_text("node,value\n" + "".join(f"{s},{s ** 3}\n" for s in range(6)))
    code, rep = run(capsys, "obstruction-run", "--n", "1", "--D", "2", "--h-file", str(h),
                    "--no-timing")
    assert code == 0
    assert rep["schema"] == 1 and rep["seed"] == 0
    assert rep["result"]["verdict"] == "Infeasible"
    assert rep["result"]["witness"] == "12"


def test_ramsey_with_user_file(tmp_path, capsys):
    f = tmp_path / "k6.json"
    f.write_text(json.dumps(ramsey.graph_coloring(6, 0b101100111000110).to_json()))
    code, rep = run(capsys, "ramsey-find", "--coloring", str(f), "--q", "3", "--no-timing")
    assert code == 0
    res = rep["result"]["result"]
    c = ramsey.load_coloring(f.read_text())
    assert res["kind"] == "subset"
    assert ramsey.verify_mono_subset(c, res["subset"], res["color"])


def test_reports_are_byte_identical(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["obstruction-sweep", "--n", "2", "--D", "0,1", "--sizes", "2,3",
                     "--h", "random", "--seed", "5", "--no-timing", "-o", str(out)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_timing_present_by_default(capsys):
    code, rep = run(capsys, "snf", "--matrix", "[[2,0],[0,3]]")
    assert code == 0 and "wall_seconds" in rep["timing"]
    assert rep["result"]["invariant_factors"] == ["1", "6"]


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("command: obstruction-sweep\nseed: 3\nn: 1\nD: [0, 1]\nsizes: [2, 3]\n"
                   "h: random\n")
    code, rep = run(capsys, "obstruction-sweep", "--config", str(cfg), "--sizes", "4",
                    "--no-timing")
    assert code == 0
    assert rep["seed"] == 3
    assert rep["config"]["params"]["sizes"] == "4"
    assert {r["grid_size"] for r in rep["result"]["instances"]} == {4}


def test_invalid_config(tmp_path, capsys):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("bogus: 1\n")
    assert main(["snf", "--config", str(cfg)]) == 2
    assert main(["snf", "--ring", "QQ[a,b]", "--matrix", "[[1]]"]) == 2
    assert main(["obstruction-run", "--h-file", str(tmp_path / "missing.csv")]) == 2
    capsys.readouterr()


def test_too_large(capsys):
    assert main(["obstruction-sweep", "--n", "9"]) == 4
    assert main(["ramsey-find", "--builtin", "constant", "--params", '{"n": 40}']) == 4
    capsys.readouterr()


def test_csv_export(tmp_path, capsys):
    out = tmp_path / "t.csv"
    code, _ = run(capsys, "obstruction-sweep", "--sizes", "2,3", "--csv", str(out),
                  "--no-timing")
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "grid_size,D,solver,witness,consistent"
    assert len(lines) == 1 + 2 * 3


@pytest.mark.parametrize("argv", [
    ["nabla-check", "--nodes", "0,1,2,3", "--values", "0,1,4,9", "--degree", "2"],
    ["interpolate", "--field", "GF(7)", "--nodes", "0,1,2", "--values", "1,2,4"],
    ["tower-cert", "--nodes", "0,1,2,3", "--degree", "2"],
    ["ramsey-find", "--builtin", "pentagon", "--q", "3"],
    ["ramsey-find", "--builtin", "parity", "--params", '{"n": 5}', "--sizes", "2,2"],
    ["snf", "--ring", "QQ[x]", "--matrix", '[["x", 0], [0, "x-1"]]'],
    ["split-check", "--points", "0,1,2,3"],
    ["split-check", "--ring", "QQ[a,b]", "--matrix", '[["a"], ["1-a*b"]]', "--degree-bound", "1"],
    ["indivisible", "--points", "0,1,2"],
    ["indivisible", "--idempotents", "3"],
    ["sym-trunc", "--eta", "1,0", "--n-max", "4"],
    ["obstruction-run", "--n", "2", "--D", "1", "--nodes", "0,1,2"],
    ["verify-all", "--only", "homalg.snf,ramsey.search"],
])
def test_commands_succeed(argv, capsys):
    code, rep = run(capsys, *argv, "--no-timing")
    assert code == 0, rep
    assert rep["verified"] is True


def test_negative_verdict_is_not_a_failure(capsys):
    code, rep = run(capsys, "indivisible", "--elements", "x,x^2", "--no-timing")
    assert code == 0 and rep["result"]["passed"] is False


def test_verification_failure_exit_code(monkeypatch, capsys):
    import nablakit.cli as cli
    monkeypatch.setattr(cli, "check_smith", lambda m, sf: ["forced"])
    code, rep = run(capsys, "snf", "--matrix", "[[2]]", "--no-timing")
    assert code == 3 and rep["verified"] is False
