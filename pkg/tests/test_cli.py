import json

import pytest

from conelab.cli import run
from conelab.graph import parse_graph


def report(capsys, argv):
    code = run([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_theorem_with_cross_check(capsys):
    code, rep = report(capsys, ["theorem", "--chifG", "3", "--chifH", "2", "--n", "3", "--cross-check"])
    assert code == 0
    assert rep["schema"] == 1 and "version" in rep
    assert rep["outputs"]["value"] == "41/13"
    assert rep["outputs"]["cross_check"]["chi_f"] == "41/13"
    assert rep["verdict"]["agrees"] is True
    assert "timing" not in rep


def test_theorem_out_of_scope(capsys):
    code, rep = report(capsys, ["theorem", "--chifG", "5/2", "--chifH", "3", "--n", "3"])
    assert code == 2 and rep["verdict"]["status"] is None


def test_chif_cycle(capsys):
    code, rep = report(capsys, ["chif", "--gen", "cycle", "5"])
    assert code == 0 and rep["outputs"]["chi_f"] == "5/2"
    assert rep["verdict"]["primal"]["valid"] and rep["verdict"]["dual"]["valid"]


def test_reports_are_deterministic(capsys):
    argv = ["chif", "--gen", "kneser", "5", "2", "--json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_gen_cone_chi_pipeline(tmp_path, capsys):
    g = tmp_path / "c7sq.g"
    c = tmp_path / "c7sq_cone_k2_3.g"
    assert run(["gen", "--gen", "circulant", "7", "1", "2", "--out", str(g)]) == 0
    assert run(["cone", "--file", str(g), "--H-gen", "complete", "2", "--n", "3", "--out", str(c)]) == 0
    assert parse_graph(c.read_text()).n == 37
    capsys.readouterr()
    code, rep = report(capsys, ["chi", "--file", str(c)])
    assert code == 0 and rep["outputs"]["chi"] == 5


def test_cone_with_heights(tmp_path):
    out = tmp_path / "c.g"
    assert run(["cone", "--gen", "cycle", "5", "--H-gen", "complete", "2", "--h", "0:3,1:4", "--out", str(out)]) == 0
    assert parse_graph(out.read_text()).n == 32


def test_mis_and_cap(capsys):
    code, rep = report(capsys, ["mis", "--gen", "kneser", "5", "2"])
    assert code == 0 and rep["outputs"]["count"] == 15
    code, rep = report(capsys, ["mis", "--gen", "kneser", "5", "2", "--cap", "3"])
    assert code == 2 and rep["outputs"]["truncated"]
    code, rep = report(capsys, ["chif", "--gen", "kneser", "5", "2", "--cap", "3"])
    assert code == 2 and rep["verdict"]["status"] is None


def test_certify(capsys):
    code, rep = report(capsys, ["certify", "--gen", "complete", "3", "--H-gen", "complete", "2", "--n", "3"])
    assert code == 0
    assert rep["verdict"]["clique"]["valid"] and rep["verdict"]["colouring"]["exact_cover"]
    code, rep = report(capsys, ["certify", "--gen", "complete", "3", "--H-gen", "complete", "3", "--n", "3"])
    assert code == 1
    assert rep["verdict"]["colouring"]["negative_deltas"] == [2]


def test_identities(capsys):
    code, rep = report(capsys, ["identities", "--chifG", "7/3", "--chifH", "2", "--n", "5"])
    assert code == 0 and rep["verdict"]["failed"] == []


def test_expgraph_and_hom(capsys):
    code, rep = report(capsys, ["expgraph", "--gen", "cycle", "5", "--H-gen", "complete", "3"])
    assert code == 0 and rep["outputs"]["loops"] == 30 and rep["outputs"]["min_distance"] is None
    code, rep = report(capsys, ["hom", "--gen", "cycle", "5", "--H-gen", "complete", "3"])
    assert code == 0 and rep["outputs"]["status"] == "found"
    code, rep = report(capsys, ["hom", "--gen", "cycle", "5", "--H-gen", "complete", "2"])
    assert code == 1
    code, rep = report(capsys, ["hom", "--gen", "cycle", "5", "--H-gen", "complete", "3", "--map", "0,1,0,1,2"])
    assert code == 0
    code, rep = report(capsys, ["hom", "--gen", "cycle", "5", "--H-gen", "complete", "3", "--map", "0,1,0,1,0"])
    assert code == 1 and rep["verdict"]["witness_edge"] is not None


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["chif"], ["chif", "--gen", "cycle", "2"], ["cone", "--gen", "cycle", "5"],
    ["theorem", "--chifG", "x", "--chifH", "2", "--n", "3"],
    ["chif", "--file", "/nonexistent/file.g"],
])
def test_usage_errors(argv, capsys):
    try:
        code = run(argv)
    except SystemExit as e:
        code = e.code
    assert code == 64


def test_timing_is_opt_in(capsys):
    run(["chif", "--gen", "cycle", "5", "--json", "--timing"])
    rep = json.loads(capsys.readouterr().out)
    assert "seconds" in rep["timing"] and "seconds" not in json.dumps(rep["verdict"])
