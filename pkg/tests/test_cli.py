import json
import subprocess
import sys
from pathlib import Path

import pytest

from leibniz_lattice.algebra import LeibnizIdentityError
from leibniz_lattice.cli import AlgebraFileError, dump_algebra, main, parse_algebra_file, run

DATA = Path(__file__).resolve().parent.parent / "data"


def data(name):
    return str(DATA / name)


# -- parsing -----------------------------------------------------------------

def test_parse_diamond_file():
    L = parse_algebra_file((DATA / "diamond.json").read_text())
    assert L.p == 2 and L.dim == 2 and L.labels == ("b", "v")
    assert L.products == (((0, 0), (0, 1)), ((0, 0), (0, 0)))


def test_parse_empty_products_gives_abelian():
    L = parse_algebra_file('{"field": {"p": 5}, "dim": 3, "products": []}')
    assert all(not any(v) for row in L.products for v in row)


def test_parse_identity_failure_names_triple():
    with pytest.raises(LeibnizIdentityError, match=r"\(v, b, b\)"):
        parse_algebra_file((DATA / "bad_identity.json").read_text())


@pytest.mark.parametrize("text,match", [
    ('{"field": {"p": 2},\n "dim": 2,\n "products": [}', "line 3"),
    ('{"field": {"p": 4}, "dim": 1}', "prime"),
    ('{"dim": 1}', "field"),
    ('{"field": {"p": 2}, "dim": 2, "products": [[0, 2, [0, 1]]]}', "out of range"),
    ('{"field": {"p": 2}, "dim": 2, "products": [[0, 1, [0, 2]]]}', "entries"),
    ('{"field": {"p": 2}, "dim": 2, "products": [[0, 1]]}', "not"),
])
def test_parse_errors(text, match):
    with pytest.raises(AlgebraFileError, match=match):
        parse_algebra_file(text)


@pytest.mark.parametrize("name", ["diamond.json", "single_chain.json", "chain3.json", "abelian3.json"])
def test_round_trip(name):
    L = parse_algebra_file((DATA / name).read_text())
    again = parse_algebra_file(dump_algebra(L))
    assert again.products == L.products and again.labels == L.labels
    assert dump_algebra(again) == dump_algebra(L)


# -- commands ----------------------------------------------------------------

def test_check_command():
    code, out = run(["check", data("diamond.json")])
    assert code == 0 and "holds" in out
    code, out = run(["check", data("bad_identity.json")])
    assert code == 1 and "(v, b, b)" in out


def test_kernel_command():
    code, out = run(["kernel", data("single_chain.json")])
    assert code == 0
    assert out.splitlines() == ["Leib(L): dim 2", "  v1", "  v2"]


def test_lattice_command(tmp_path):
    dot, js = tmp_path / "d.dot", tmp_path / "d.json"
    code, out = run(["lattice", data("diamond.json"), "--dot", str(dot), "--json", str(js)])
    assert code == 0
    assert out.startswith("4 subalgebras")
    assert "<v>  <- Leib(L)" in out and "modular: yes" in out
    assert "fillcolor" in dot.read_text()
    d = json.loads(js.read_text())
    assert d["nodes"][d["kernel_node"]]["text"] == "<v>"


def test_lattice_command_reports_pentagon():
    code, out = run(["lattice", data("single_chain.json")])
    assert code == 0 and out.startswith("8 subalgebras") and "modular: no" in out


def test_signature_command():
    assert run(["signature", "--poly", "x^2+1", "--p", "2"]) == (0, "[0|2|1]\n")
    assert run(["signature", "--poly", "x^3+1", "--p", "2"]) == (0, "[0|1,1|1,2]\n")


def test_onegen_command():
    code, out = run(["onegen", "--poly", "x-1", "--p", "2", "--verify"])
    assert code == 0
    assert "nilpotent generator b = a+a^2" in out
    assert "2 enumerated, 2 predicted" in out and "classification: ok" in out


def test_iso_command():
    code, out = run(["iso", data("chain3.json"), data("diamond.json")])
    assert (code, out) == (1, "not isomorphic\n")
    code, out = run(["iso", data("single_chain.json"), data("single_chain.json")])
    assert code == 0 and out.startswith("isomorphic") and "Leib maps to Leib: yes" in out


def test_verify_command_is_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["verify", "--spec", data("quick_specs.json"), "--out", str(a), "--stable"])[0] == 0
    assert run(["verify", "--spec", data("quick_specs.json"), "--out", str(b), "--stable"])[0] == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["violations"] == [] and rep["diamond_exceptions"] >= 1


def test_outputs_byte_stable():
    for argv in (["lattice", data("single_chain.json")], ["onegen", "--poly", "x^3+x+1", "--p", "2", "--verify"]):
        assert run(argv) == run(argv)


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent.json"],
    ["signature", "--poly", "x^^2", "--p", "2"],
    ["signature", "--poly", "x+1", "--p", "4"],
    ["signature", "--poly", "1", "--p", "2"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_bad_spec_file_exit_2(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text('{"specs": [{"p": 2, "mode": "sampled", "dim": 3}]}')
    assert main(["verify", "--spec", str(spec)]) == 2
    spec.write_text("[1, 2]")
    assert main(["verify", "--spec", str(spec)]) == 2


def test_budget_env_var(monkeypatch, capsys):
    monkeypatch.setenv("LEIBNIZ_BUDGET", "2")
    assert main(["lattice", data("abelian3.json")]) == 2
    assert "budget" in capsys.readouterr().err.lower()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "leibniz_lattice", "signature", "--poly", "x^2+1", "--p", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "[0|2|1]\n"
