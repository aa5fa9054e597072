import io
import json
import subprocess
import sys


from tamewitt.cli import EXIT_INPUT, EXIT_OK, EXIT_PRECISION, run
from tamewitt.forms import Case
from tamewitt.padic import make_field
from tamewitt.serialize import witt_class_from_json

Q3 = '{"p":3,"f0":1}'
SQRT3 = '{"p":3,"tower":[{"kind":"eisenstein","e":2,"unit":1}]}'
SQRT3_TOWER = json.loads(SQRT3)


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    data = json.loads(out.getvalue()) if out.getvalue() else None
    return code, data, err.getvalue()


def test_witt_list():
    code, data, err = call("witt", "--case", "orthogonal", "--field", Q3, "--list")
    assert code == EXIT_OK
    assert data["order"] == 16 and len(data["classes"]) == 16
    assert "order 16" in err


def test_witt_output_reparses():
    _, data, _ = call("witt", "--case", "orthogonal", "--field", Q3)
    case = Case.orthogonal(make_field(3, 1))
    parsed = [witt_class_from_json(c, case) for c in data["classes"]]
    assert [c.to_json() for c in parsed] == data["classes"]


def test_unitary_and_symplectic_groups():
    code, data, _ = call("witt", "--case", "unitary", "--field", SQRT3, "--eps", "-1")
    assert code == 0 and data["order"] == 4
    code, data, _ = call("witt", "--case", "symplectic", "--field", Q3)
    assert code == 0 and data["order"] == 1


def test_enumerate_gl(tmp_path):
    cat = tmp_path / "cat.json"
    cat.write_text(json.dumps({"classes": [{"id": "a", "kind": "GL", "degree": 1}, {"id": "b", "kind": "GL", "degree": 2}]}))
    code, data, _ = call("enumerate", "--case", "gl", "--catalog", str(cat), "--dim", "4")
    assert code == 0
    assert data["count"] == 3
    assert data["parameters"] == [{"b": 2}, {"a": 2, "b": 1}, {"a": 4}]


def test_enumerate_classical_with_field():
    cat = json.dumps({"classes": [
        {"id": "z", "kind": "Zero"},
        {"id": "s", "kind": "SkewElementary", "field": SQRT3_TOWER, "beta": "pi"},
    ]})
    code, data, _ = call("enumerate", "--case", "orthogonal", "--field", Q3, "--catalog", cat, "--dim", "2")
    assert code == 0 and data["count"] > 0
    target = json.dumps({"diag": [{"unit": "1", "val": 0}]})
    code, data2, _ = call("enumerate", "--case", "orthogonal", "--field", Q3, "--catalog", cat, "--dim", "3", "--target", target)
    assert code == 0 and data2["count"] > 0


def test_transfer_example():
    form = '{"diag":[{"unit":"1","val":0}]}'
    code, data, _ = call("transfer", "--field", SQRT3, "--beta", "pi", "--form", form)
    assert code == 0
    _, ref, _ = call("classify", "--case", "orthogonal", "--field", Q3, "--form", '{"gram":[[1,0],[0,-3]]}')
    assert data["invariants"] == ref["invariants"]
    assert data["witt_class"] == ref["witt_class"]
    assert data["gram"][0][1]["coords"] == [0]


def test_classify_and_match():
    code, data, _ = call("classify", "--case", "orthogonal", "--field", Q3, "--form", '{"diag":[{"unit":"1","val":0},{"unit":"1","val":0}]}')
    assert code == 0 and data["diman"] == 2
    other = '{"p":3,"tower":[{"kind":"eisenstein","e":2,"unit":4}]}'
    code, data, _ = call("match", "--field", SQRT3, "--beta", "pi", "--field2", other, "--beta2", "pi")
    assert code == 0 and len(data["map"]) == 4


def test_lattice_command():
    L = '{"e":1,"mu":[[0],[0]]}'
    code, data, _ = call("lattice", "--lattice", L, "--form", '{"alpha":[0,0]}', "--an", "0", "--dagger")
    assert code == 0
    assert data["self_dual_witness"] == 1
    assert data["dagger"]["regular"] and data["dagger"]["self_dual_witness"] == 1
    assert data["a_n"]["0"] == [[0, 0], [0, 0]]


def test_exit_codes(capsys):
    assert call("frobnicate")[0] == EXIT_INPUT
    assert call("witt", "--case", "orthogonal", "--field", "{bad")[0] == EXIT_INPUT
    assert call("witt", "--case", "orthogonal", "--field", '{"p":3,"colour":1}')[0] == EXIT_INPUT
    assert call("witt", "--case", "orthogonal", "--field", '{"p":2}')[0] == EXIT_INPUT
    assert call("--precision", "4", "witt", "--case", "symplectic", "--field", Q3)[0] == EXIT_INPUT
    code, _, err = call("classify", "--case", "orthogonal", "--field", Q3, "--form", '{"gram":[[0,0],[0,0]]}')
    assert code == EXIT_PRECISION and "precision" in err
    capsys.readouterr()


def test_precision_environment(monkeypatch):
    monkeypatch.setenv("TAMEWITT_PRECISION", "5")
    assert call("witt", "--case", "symplectic", "--field", Q3)[0] == EXIT_INPUT
    monkeypatch.setenv("TAMEWITT_PRECISION", "16")
    assert call("witt", "--case", "symplectic", "--field", Q3)[0] == EXIT_OK


def test_deterministic_output():
    argv = ("witt", "--case", "unitary", "--field", '{"p":5,"tower":[{"kind":"unramified","f":2}]}')
    assert call(*argv)[1] == call(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tamewitt.cli", "witt", "--case", "orthogonal", "--field", Q3],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 16


def test_selftest_quick():
    code, data, err = call("selftest", "--quick")
    assert code == 0 and data["passed"]
    assert err.count("PASS") == 10
