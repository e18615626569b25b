import io
import json
import subprocess
import sys

import pytest

from kuragenus.cli import EXIT_BUDGET, EXIT_PARSE, RunConfig, main, run
from kuragenus.graph import Graph


def call(argv, stdin=None, capsys=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    status = main(argv)
    out = capsys.readouterr().out
    return status, out


def test_gen_emits_ten_vertices(capsys):
    status = main(["gen", "--k", "2", "--i", "0", "--pieces", "k5,k5"])
    obj = json.loads(capsys.readouterr().out)
    assert status == 0 and obj["n"] == 10 and len(obj["edges"]) == 20


def test_genus_of_generated_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["gen", "--k", "2", "--i", "0", "--pieces", "k5,k5", "-o", str(path)]) == 0
    capsys.readouterr()
    assert main(["genus", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["genus"] == 2


def test_round_trip_of_emitted_graph(tmp_path, capsys):
    path = tmp_path / "g.json"
    main(["gen", "--k", "2", "--i", "2", "--pieces", "k33e,k33n", "-o", str(path)])
    g = Graph.from_json(path.read_text())
    assert Graph.from_json(g.to_json()) == g
    assert g.n == 10


def test_stdin_streaming(capsys, monkeypatch):
    status, out = call(["planarity"], Graph.complete(5).to_json(), capsys, monkeypatch)
    assert status == 0
    assert json.loads(out)["planar"] is False


def test_detect_none_on_planar(capsys, monkeypatch):
    status, out = call(["detect", "--k", "1", "--i", "0"], Graph.grid(3, 3).to_json(), capsys, monkeypatch)
    assert status == 0 and json.loads(out) == "none"


def test_detect_junction(capsys, monkeypatch):
    g = Graph.complete_bipartite(3, 2)
    status, out = call(["detect", "--k", "2", "--i", "3", "--junction"], g.to_json(), capsys, monkeypatch)
    assert status == 0 and sorted(json.loads(out)["roots"]) == [0, 1, 2]


def test_bridges_command(capsys, monkeypatch):
    g = Graph.cycle(4).add_edges([(0, 2), (1, 3)])
    status, out = call(["bridges", "--cycle", "0,1,2,3", "--ends", "0,2"], g.to_json(), capsys, monkeypatch)
    obj = json.loads(out)
    assert status == 0 and len(obj["bridges"]) == 2 and obj["conflicts"]


def test_planarize_command(capsys, monkeypatch):
    doc = json.dumps({"graph": Graph.complete(5).to_json_obj(), "apex_set": [0], "k": 1})
    status, out = call(["planarize"], doc, capsys, monkeypatch)
    obj = json.loads(out)
    assert status == 0 and obj["splits"] == 1 and obj["apex_vertices_after"] == 2
    status, out = call(["planarize", "--exact"], doc, capsys, monkeypatch)
    assert json.loads(out)["meta"]["nonplanarity"] == 2


def test_planarize_apex_flag(capsys, monkeypatch):
    status, out = call(["planarize", "--apex", "0"], Graph.complete_bipartite(3, 3).to_json(), capsys, monkeypatch)
    assert status == 0 and json.loads(out)["splits"] >= 1


def test_trees_command(capsys, monkeypatch):
    doc = json.dumps({"trees": [Graph.path(9).to_json_obj()], "marks": [list(range(9))], "d": 3})
    status, out = call(["trees", "--k", "1"], doc, capsys, monkeypatch)
    assert status == 0 and len(json.loads(out)["triples"]) == 1
    status, out = call(["trees"], doc, capsys, monkeypatch)
    obj = json.loads(out)
    assert not set(obj["X"]) & set(obj["Y"])


def test_parse_errors_exit_2(capsys, monkeypatch):
    assert call(["genus"], "{bad", capsys, monkeypatch)[0] == EXIT_PARSE
    assert call(["genus"], '{"edges": []}', capsys, monkeypatch)[0] == EXIT_PARSE
    assert main(["genus", "--cap", "0", "/nonexistent"]) == EXIT_PARSE
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_budget_exit_3(capsys, monkeypatch):
    assert call(["genus", "--cap", "5"], Graph.complete(5).to_json(), capsys, monkeypatch)[0] == EXIT_BUDGET


def test_budget_env_var(capsys, monkeypatch):
    monkeypatch.setenv("KURAGENUS_BUDGET", "5")
    assert call(["genus"], Graph.complete(5).to_json(), capsys, monkeypatch)[0] == EXIT_BUDGET
    monkeypatch.setenv("KURAGENUS_BUDGET", "many")
    assert call(["genus"], Graph.complete(5).to_json(), capsys, monkeypatch)[0] == EXIT_PARSE


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("nope")
    with pytest.raises(ValueError):
        RunConfig("genus", params={"cap": -1})
    assert RunConfig("verify").params["seed"] == 0


def test_verify_is_deterministic():
    a = run(RunConfig("verify", params={"scale": "quick", "only": "1,10"}))
    b = run(RunConfig("verify", params={"scale": "quick", "only": "1,10"}))
    strip = lambda r: [{k: v for k, v in c.items() if k != "seconds"} for c in r[1]["criteria"]]  # noqa: E731
    assert a[0] == 0 and strip(a) == strip(b)
    assert a[1]["checks"] > 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kuragenus", "gen", "--k", "1", "--i", "3"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["n"] == 4
