import json
import subprocess
import sys

import pytest

from deriva.algebra import AlgebraElement
from deriva.cli import main
from deriva.derivations import DerivationMatrix, GeneratorAssignment, extend_generator_map, inner_derivation
from deriva.errors import MalformedInput
from deriva.fields import make_field
from deriva.groups import dihedral
from deriva.io import parse_cayley_csv, read_cayley, read_derivation, read_element

Q, GF3 = make_field(0), make_field(3)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_exit(capsys, *argv):
    # argparse reports usage errors via SystemExit
    with pytest.raises(SystemExit) as info:
        main(list(argv))
    capsys.readouterr()
    return info.value.code


@pytest.fixture
def c2_csv(tmp_path):
    p = tmp_path / "c2.csv"
    p.write_text("0,1\n1,0\n")
    return p


# -- dimensions ---------------------------------------------------------------------

def test_dimensions_dihedral(capsys):
    code, out, _ = run(capsys, "dimensions", "--family", "dihedral", "--n", "3", "--char", "0",
                       "--format", "json")
    row = json.loads(out)
    assert code == 0 and (row["der"], row["inner"], row["outer"]) == (3, 3, 0)


def test_dimensions_dicyclic_modular(capsys):
    code, out, _ = run(capsys, "dimensions", "--family", "dicyclic", "--n", "3", "--char", "3",
                       "--format", "json")
    row = json.loads(out)
    assert code == 0 and (row["der"], row["inner"], row["outer"], row["class_count"]) == (8, 6, 2, 6)


def test_dimensions_from_cayley(capsys, c2_csv):
    code, out, _ = run(capsys, "dimensions", "--cayley", str(c2_csv), "--char", "0", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert dict(zip(header.split(","), row.split(",")))["der"] == "0"


def test_dimensions_text(capsys):
    code, out, _ = run(capsys, "dimensions", "--family", "semidihedral", "--n", "1")
    assert code == 0 and "der 0, inner 0, outer 0" in out


@pytest.mark.parametrize("argv", [
    ["dimensions", "--family", "dihedral", "--n", "3", "--char", "6"],
    ["dimensions", "--family", "cyclic", "--n", "3"],
    ["dimensions", "--n", "3"],
    ["dimensions"],
])
def test_usage_errors(capsys, argv):
    assert run_exit(capsys, *argv) == 2


def test_parameter_too_small_is_usage(capsys):
    assert run(capsys, "dimensions", "--family", "dihedral", "--n", "2")[0] == 2
    assert run(capsys, "classes", "--family", "dicyclic", "--n", "1")[0] == 2
    assert run(capsys, "classes", "--family", "dicyclic", "--n", "1", "--allow-degenerate")[0] == 0


def test_both_sources_is_usage(capsys, c2_csv):
    assert run_exit(capsys, "classes", "--family", "dihedral", "--n", "3", "--cayley", str(c2_csv)) == 2


def test_bad_table_exit_3(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"table": [[0, 1, 2], [1, 0, 1], [2, 2, 0]]}))
    code, _, err = run(capsys, "dimensions", "--cayley", str(p))
    assert code == 3 and "associativity" in err
    garbled = tmp_path / "garbled.csv"
    garbled.write_text("0,x\n1,0\n")
    assert run(capsys, "classes", "--cayley", str(garbled))[0] == 3


# -- classes ---------------------------------------------------------------------------

def test_classes_json(capsys):
    code, out, _ = run(capsys, "classes", "--family", "dihedral", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["class_count"] == 3
    assert [c["members"] for c in doc["classes"]] == [["1"], ["a", "a^2"], ["b", "ab", "a^2b"]]


# -- verify -----------------------------------------------------------------------------

def test_verify_semidihedral(capsys):
    code, out, _ = run(capsys, "verify", "--family", "semidihedral", "--n", "2", "--char", "0",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "PASS" and doc["dims"]["der"] == 9


def test_verify_dihedral_6_char_3(capsys):
    code, out, _ = run(capsys, "verify", "--family", "dihedral", "--n", "6", "--char", "3", "--format", "json")
    assert code == 0 and json.loads(out)["dims"] == {"der": 8, "inner": 6, "outer": 2}


def test_verify_text_lists_basis(capsys):
    code, out, _ = run(capsys, "verify", "--family", "dihedral", "--n", "3")
    assert code == 0 and "(ab - a^2b, 0)" in out and "PASS" in out


def test_verify_char_two(capsys):
    assert run(capsys, "verify", "--family", "dihedral", "--n", "3", "--char", "2")[0] == 2
    code, out, _ = run(capsys, "verify", "--family", "dihedral", "--n", "3", "--char", "2", "--inner-only")
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_needs_family(capsys, c2_csv):
    assert run_exit(capsys, "verify", "--cayley", str(c2_csv)) == 2


def test_verify_mismatch_exit_1(capsys, monkeypatch):
    import deriva.cli as cli
    from deriva.verify import Check

    real = cli.verify_family

    def broken(spec):
        r = real(spec)
        r.checks.append(Check("injected", False, "forced"))
        return r

    monkeypatch.setattr(cli, "verify_family", broken)
    code, _, err = run(capsys, "verify", "--family", "dihedral", "--n", "3")
    assert code == 1 and "injected" in err


# -- sweep -------------------------------------------------------------------------------

def test_sweep_filtered(capsys):
    code, out, _ = run(capsys, "sweep", "--families", "dihedral", "--chars", "0")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 + 8 + 1
    assert lines[-1] == "# summary: 8 PASS, 0 FAIL, 8 cells"


def test_sweep_env_grid_and_parallel_bytes(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("DERIVA_GRID", json.dumps({"families": {"dicyclic": [2, 3], "dihedral": [3]},
                                                  "chars": [0, 3]}))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(capsys, "sweep", "--out", str(a))[0] == 0
    assert run(capsys, "sweep", "--out", str(b), "--parallel", "4")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert len(a.read_text().splitlines()) == 1 + 6 + 1


def test_sweep_rejects_char_two(capsys):
    assert run(capsys, "sweep", "--families", "dihedral", "--chars", "2")[0] == 2
    assert run_exit(capsys, "sweep", "--families", "nope") == 2


# -- witness ------------------------------------------------------------------------------

def test_witness_inner(capsys, tmp_path):
    G = dihedral(3)
    D = inner_derivation(AlgebraElement.basis(G, Q, G.elem(0, 1)))
    p = tmp_path / "d.json"
    p.write_text(json.dumps(D.to_json()))
    code, out, _ = run(capsys, "witness", "--family", "dihedral", "--n", "3", str(p), "--format", "json")
    beta = AlgebraElement.from_json(G, Q, json.loads(out))
    assert code == 0 and inner_derivation(beta) == D


def test_witness_outer(capsys, tmp_path):
    G = dihedral(3)
    e = G.elem
    f = GeneratorAssignment((AlgebraElement.from_terms(G, GF3, {e(2): 1, e(0): -1}), AlgebraElement.zero(G, GF3)))
    p = tmp_path / "d.json"
    p.write_text(json.dumps(extend_generator_map(f).to_json()))
    code, out, _ = run(capsys, "witness", "--family", "dihedral", "--n", "3", "--char", "3", str(p))
    assert code == 0 and out == "OUTER\n"


def test_witness_non_leibniz(capsys, tmp_path):
    G = dihedral(3)
    cols = [[0] * 6 for _ in range(6)]
    cols[1][1] = 1
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"columns": cols}))
    assert run(capsys, "witness", "--family", "dihedral", "--n", "3", str(p))[0] == 3
    p.write_text("{not json")
    assert run(capsys, "witness", "--family", "dihedral", "--n", "3", str(p))[0] == 3


# -- io -----------------------------------------------------------------------------------

def test_read_cayley_formats(tmp_path):
    G = dihedral(3)
    doc = {"table": [list(r) for r in G.cayley], "generators": list(G.generators),
           "relators": ["aaa", "bb", "abab"]}
    p = tmp_path / "d6.json"
    p.write_text(json.dumps(doc))
    H = read_cayley(p)
    assert H.order == 6 and len(H.relators) == 3
    q = tmp_path / "d6.csv"
    q.write_text("\n".join(",".join(map(str, r)) for r in G.cayley) + "\n")
    assert read_cayley(q).cayley == G.cayley
    with pytest.raises(MalformedInput):
        read_cayley(tmp_path / "missing.csv")
    r = tmp_path / "notable.json"
    r.write_text("[]")
    with pytest.raises(MalformedInput):
        read_cayley(r)


def test_csv_parsing():
    assert parse_cayley_csv("0, 1\n\n1, 0\n") == [[0, 1], [1, 0]]


def test_read_element_and_derivation(tmp_path):
    G = dihedral(3)
    x = AlgebraElement.from_terms(G, Q, {1: "1/2"})
    p = tmp_path / "x.json"
    p.write_text(json.dumps(x.to_json()))
    assert read_element(p, G, Q) == x
    p.write_text(json.dumps({"coeffs": [0.5] * 6}))
    with pytest.raises(MalformedInput):
        read_element(p, G, Q)
    D = DerivationMatrix.zero(G, Q)
    p.write_text(json.dumps(D.to_json()))
    assert read_derivation(p, G, Q) == D
    with pytest.raises(MalformedInput):
        read_derivation(tmp_path / "absent.json", G, Q)


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "deriva.cli", "dimensions", "--family", "dihedral",
                           "--n", "3", "--char", "3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "der 4, inner 3, outer 1" in proc.stdout
