import io
import json

import pytest

from cgk.cli import main
from cgk.decomp import CorrGraph
from cgk.problem import emit_dot, parse_problem
from helpers import PROBLEMS

ALL = sorted(p.stem for p in PROBLEMS.glob("*.json"))


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def P(name):
    return PROBLEMS / f"{name}.json"


def test_decompose_json():
    code, out, _ = run("decompose", P("s3_three_loops"), "--json")
    assert code == 0
    d = json.loads(out)
    assert d["sizes"] == [1, 1, 2]
    assert d["matrix"] == [[1, 0, 1], [0, 1, 1], [1, 1, 2]]


def test_ktheory_text():
    code, out, _ = run("ktheory", P("toeplitz_z2"))
    assert code == 0 and "K0 = Z ⊕ Z_2, K1 = 0" in out


def test_skew_counts():
    code, out, _ = run("skew", P("three_loops_z3_cocycle"), "--json")
    d = json.loads(out)
    assert code == 0 and len(d["vertices"]) == 3 and len(d["edges"]) == 9


def test_dot_labels_toeplitz():
    code, out, _ = run("decompose", P("toeplitz_z2"), "--dot", "-")
    assert code == 0
    dot = out[out.index("digraph"):]
    assert [l.split('label="')[1].split('"')[0] for l in dot.splitlines() if "->" not in l and "label" in l] == [
        "C", "C", "M_2"]
    assert sorted(l.split('label="')[1].split('"')[0] for l in dot.splitlines() if "->" in l) == ["C^2", "C^2", "M_2"]


def test_dot_labels_cross():
    _, out, _ = run("decompose", P("cross_d4"), "--dot", "-")
    dot = out[out.index("digraph"):]
    nodes = [l for l in dot.splitlines() if "->" not in l and "label" in l]
    assert len(nodes) == 7
    edges = [l.split('label="')[1].split('"')[0] for l in dot.splitlines() if "->" in l]
    assert sorted(set(edges)) == ["C^4", "M_{2,4}"]


def test_dot_multiplicity_suffix():
    _, out, _ = run("decompose", P("s3_three_loops"), "--dot", "-")
    assert 'label="M_2 ×2"' in out


def test_skeleton_dot_is_plain():
    _, out, _ = run("quotient", P("triangle_s3"), "--dot", "-")
    assert "digraph" in out and "n0 -> n0;" in out


@pytest.mark.parametrize("name", ALL)
def test_dot_round_trip(name, tmp_path):
    dot_path = tmp_path / "a.dot"
    code, out, _ = run("decompose", P(name), "--json", "--dot", dot_path)
    assert code == 0
    cg = CorrGraph.from_json(json.loads(out))
    assert emit_dot(cg, "correspondences") == dot_path.read_text()


@pytest.mark.parametrize("name", ALL)
def test_all_commands_run(name, tmp_path):
    data = json.loads(P(name).read_text())
    cmds = [
        ["validate"], ["orbits"], ["quotient"], ["chartable"], ["blocks"], ["decompose"], ["ktheory"],
        ["ktheory", "--skeleton"], ["dimgroup"], ["props"], ["props", "--skeleton"], ["oracle-check"],
        ["report", "--figures", tmp_path],
    ]
    if "cocycle" in data:
        cmds.append(["skew"])
    if "representation" in data:
        cmds += [["ktheory", "--dr"], ["dimgroup", "--dr"]]
    for c in cmds:
        code, out, err = run(c[0], P(name), *c[1:])
        assert code == 0, (c, err)
        assert out
    assert (tmp_path / f"{name}_correspondences.png").stat().st_size > 0


def test_json_outputs_parse():
    for c in ["validate", "orbits", "chartable", "blocks", "ktheory", "props", "dimgroup", "oracle-check"]:
        code, out, _ = run(c, P("cross_d4"), "--json")
        assert code == 0
        json.loads(out)


def test_oracle_check_output():
    code, out, _ = run("oracle-check", P("toeplitz_z2"))
    d = json.loads(out)
    assert d["match"] is True and d["blocks"] == [1, 1, 2]
    assert sum(map(sum, d["corner_dims"])) == 8


def test_dimgroup_matrix_flag():
    code, out, _ = run("dimgroup", P("s3_three_loops"), "--matrix", "[[2]]", "--json")
    assert code == 0 and json.loads(out) == {"k": 1, "B": [[2]], "stable_rank": 1}
    code, _, err = run("dimgroup", P("s3_three_loops"), "--matrix", "[[1,-1],[0,1]]")
    assert code == 1 and err.startswith("NegativeEntries:")


def test_parse_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"graph": {"vertices": [], "edges": []}, "colour": 1}')
    code, _, err = run("validate", bad)
    assert code == 2 and err.startswith("ProblemFormatError:") and "colour" in err
    bad.write_text("{not json")
    assert run("validate", bad)[0] == 2
    yml = tmp_path / "p.yaml"
    yml.write_text("graph: {}")
    assert run("validate", yml)[0] == 2
    assert run("frobnicate", P("toeplitz_z2"))[0] == 2
    assert run("skew", P("toeplitz_z2"))[0] == 2


def test_domain_errors_exit_1(tmp_path):
    data = json.loads(P("toeplitz_z2").read_text())
    data["action"]["generators"][0]["edge_map"] = {"e1": "f1", "f1": "e1"}
    p = tmp_path / "incompatible.json"
    p.write_text(json.dumps(data))
    code, _, err = run("validate", p)
    assert code == 1 and err.startswith("NotCompatible:") and err.count("\n") == 1
    code, _, err = run("decompose", P("cross_d4"), "--max-group-order", "4")
    assert code == 1 and err.startswith("BoundExceeded:")
    code, _, err = run("oracle-check", P("cross_d4"), "--max-oracle-dim", "10")
    assert code == 1 and err.startswith("BoundExceeded:")


def test_strict_schema():
    base = json.loads(P("s3_dr_2dim").read_text())
    parse_problem(base)
    for mutate in (
        lambda d: d["graph"]["edges"][0].update(weight=1),
        lambda d: d["action"].update(extra=[]),
        lambda d: d["action"]["generators"][0].update(order=2),
        lambda d: d["representation"]["character"].update(degree=2),
        lambda d: d["graph"]["edges"][0].update(src=3),
    ):
        d = json.loads(json.dumps(base))
        mutate(d)
        with pytest.raises(Exception) as exc:
            parse_problem(d)
        assert type(exc.value).__name__ == "ProblemFormatError"


def test_outputs_are_deterministic():
    a = run("report", P("cross_d4"))[1]
    b = run("report", P("cross_d4"))[1]
    assert a == b
