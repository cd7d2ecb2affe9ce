import json

import pytest

from tngeom import jsonio
from tngeom.cli import main
from tngeom.linalg import Matrix
from tngeom.networks import chain_graph, identity_instance, loop_graph, random_instance
from tngeom.zoo import Splitting, mmult


@pytest.fixture
def triangle_files(tmp_path):
    g = loop_graph((2, 2, 2))
    paths = {}
    paths["graph"] = tmp_path / "graph.json"
    paths["graph"].write_text(jsonio.dumps(jsonio.graph_to_obj(g)))
    paths["instance"] = tmp_path / "instance.json"
    paths["instance"].write_text(jsonio.dumps(jsonio.instance_to_obj(identity_instance(g))))
    paths["tensor"] = tmp_path / "tensor.json"
    paths["tensor"].write_text(jsonio.dumps(jsonio.tensor_to_obj(mmult(2, 2, 2))))
    ident = Matrix.identity(4)
    paths["idsplit"] = tmp_path / "idsplit.json"
    paths["idsplit"].write_text(jsonio.dumps(jsonio.splitting_to_obj(Splitting(ident, ident, ident))))
    return paths


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_contract_identity_instance(triangle_files, capsys):
    code, out, _ = run(["contract", triangle_files["instance"]], capsys)
    assert code == 0
    assert json.loads(out) == jsonio.tensor_to_obj(mmult(2, 2, 2))


def test_contract_writes_file(triangle_files, tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(["contract", triangle_files["instance"], "--out", target], capsys)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["shape"] == [4, 4, 4]


def test_stabilizer_report(triangle_files, capsys):
    code, out, _ = run(["stabilizer", triangle_files["tensor"]], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep == {"stab_dim": 11, "orbit_dim": 37, "field": "rational", "prime": None}


def test_stabilizer_prime_backend(triangle_files, capsys):
    code, out, _ = run(["stabilizer", triangle_files["tensor"], "--field", "fp"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["stab_dim"] == 11
    assert rep["field"] == "Fp" and rep["prime"] == 2**31 - 1


def test_certify_default_splitting(capsys):
    code, out, _ = run(["certify", "--e", "2"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["conclusion"] == "not_closed_certified"
    assert (rep["stab_mmult"], rep["stab_mtilde"]) == (11, 12)


def test_certify_identity_splitting_inconclusive(triangle_files, capsys):
    code, out, _ = run(["certify", "--e", "2", "--splitting", triangle_files["idsplit"]], capsys)
    assert code == 1
    rep = json.loads(out)
    assert rep["conclusion"] == "inconclusive"
    assert "power-0" in rep["reason"]


def test_dim_report(triangle_files, capsys):
    code, out, _ = run(["dim", triangle_files["graph"], "--seed", "3"], capsys)
    assert code == 0
    assert json.loads(out) == {"jacobian_dim": 37, "formula_dim": 37, "agree": True}


def test_dim_unknown_formula(tmp_path, capsys):
    g = chain_graph((3, 5, 3), (2, 2))
    p = tmp_path / "chain.json"
    p.write_text(jsonio.dumps(jsonio.graph_to_obj(g)))
    code, out, _ = run(["dim", p], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["formula_dim"] == "unknown" and rep["agree"] is None
    assert isinstance(rep["jacobian_dim"], int)


def test_reduce_chain(tmp_path, capsys):
    g = chain_graph((2, 4, 4, 2), (2, 2, 2))
    p = tmp_path / "chain4.json"
    p.write_text(jsonio.dumps(jsonio.graph_to_obj(g)))
    code, out, _ = run(["reduce", p], capsys)
    assert code == 0
    rep = json.loads(out)
    assert len(rep["graph"]["vertices"]) == 2
    assert len(rep["merges"]) == 2
    assert rep["merges"][0] == {"removed": 1, "edge": 1, "target": 2, "new_dim": 8}


def test_limit_report(capsys):
    code, out, _ = run(["limit", "--e", "2"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["leading_power"] == 1
    # degree-2 coefficient vanishes: any combination with exactly two
    # off-diagonal projections has a zero trace when e = 2
    assert [t["power"] for t in rep["terms"]] == [1, 3]
    assert rep["leading_term"] == rep["terms"][0]["tensor"]


def test_exit_2_on_bad_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("not json")
    code, _, err = run(["contract", p], capsys)
    assert code == 2 and "error" in err


def test_exit_2_on_bad_prime(triangle_files, capsys):
    code, _, err = run(["stabilizer", triangle_files["tensor"], "--field", "fp", "--prime", "10"], capsys)
    assert code == 2 and "prime" in err


def test_exit_3_on_semantic_error(tmp_path, capsys):
    obj = {"vertices": [{"id": 1, "dim": 2}],
           "edges": [{"id": 1, "tail": 1, "head": 1, "dim": 2}]}
    p = tmp_path / "selfloop.json"
    p.write_text(json.dumps(obj))
    code, _, err = run(["reduce", p], capsys)
    assert code == 3 and "self loop" in err


def test_exit_3_on_shape_mismatch(tmp_path, triangle_files, capsys):
    # splitting for e=2 fed into an e=3 run
    code, _, err = run(["certify", "--e", "3", "--splitting", triangle_files["idsplit"]], capsys)
    assert code == 3


def test_reports_are_byte_stable(triangle_files, tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert main(["certify", "--e", "2", "--out", str(a)]) == 0
    assert main(["certify", "--e", "2", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "tngeom", "certify", "--e", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["conclusion"] == "not_closed_certified"
