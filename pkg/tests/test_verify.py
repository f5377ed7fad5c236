import json

import pytest

from deriva.families import FamilySpec
from deriva.fields import make_field
from deriva.verify import (DEFAULT_GRID, FAIL, PASS, Check, VerificationReport, grid_cells,
                           load_grid, summary_line, sweep, sweep_rows, verify_family,
                           verify_inner_only)

Q, GF3 = make_field(0), make_field(3)


@pytest.mark.parametrize("family, n, p, dims", [
    ("dihedral", 3, 0, {"der": 3, "inner": 3, "outer": 0}),
    ("dihedral", 3, 3, {"der": 4, "inner": 3, "outer": 1}),
    ("dihedral", 6, 3, {"der": 8, "inner": 6, "outer": 2}),
    ("semidihedral", 3, 3, {"der": 16, "inner": 12, "outer": 4}),
    ("semidihedral", 2, 0, {"der": 9, "inner": 9, "outer": 0}),
])
def test_verify_examples(family, n, p, dims):
    r = verify_family(FamilySpec(family, n, make_field(p)))
    assert r.status == PASS, r.first_divergence
    assert r.computed_dims == dims == r.expected_dims


def test_report_schema():
    r = verify_family(FamilySpec("dicyclic", 3, GF3))
    doc = json.loads(json.dumps(r.to_json()))
    assert {"spec", "dims", "checks", "status", "variant_notes"} <= set(doc)
    assert set(doc["dims"]) == {"der", "inner", "outer"}
    assert all(set(c) == {"name", "pass", "detail"} for c in doc["checks"])
    assert doc["status"] == "PASS" and doc["first_divergence"] is None
    assert doc["spec"] == {"family": "dicyclic", "n": 3, "characteristic": 3, "regime": "MODULAR"}
    assert doc["variant_notes"]
    assert doc["metadata"]["unknown_order"].startswith("f(a)")
    assert all(b["is_derivation"] and b["independent"] for b in doc["basis_checks"])
    assert set(doc["anticentralizer_checks"]) == {"b", "a^{n+1}b"}


def test_check_order():
    names = [c.name for c in verify_family(FamilySpec("dihedral", 4, Q)).checks]
    first = lambda prefix: next(i for i, x in enumerate(names) if x.startswith(prefix))
    assert first("class_count") < first("anticentralizer") < first("basis.") \
        < first("oracle") < first("inner.") < first("outer.")


def test_status_follows_checks():
    spec = FamilySpec("dihedral", 3, Q)
    r = VerificationReport(spec, {}, {}, {}, checks=[Check("x", True), Check("y", False, "why")])
    assert r.status == FAIL and r.first_divergence.name == "y"
    r.checks[1] = Check("y", True)
    assert r.status == PASS
    assert VerificationReport(spec, {}, {}, {}).status == FAIL


def test_degenerate_annotation():
    r = verify_family(FamilySpec("semidihedral", 1, Q))
    assert r.status == PASS
    assert any("degenerate" in a for a in r.annotations)


def test_modular_report_has_outer_example():
    r = verify_family(FamilySpec("dihedral", 9, GF3))
    assert r.status == PASS
    assert any(c.name == "outer.example_found" and c.passed for c in r.checks)


@pytest.mark.parametrize("family, n", [("dihedral", 3), ("dihedral", 4), ("dicyclic", 2),
                                       ("dicyclic", 3), ("semidihedral", 2), ("semidihedral", 3)])
def test_inner_only_in_characteristic_two(family, n):
    checks = verify_inner_only(family, n, make_field(2))
    assert checks and all(c.passed for c in checks)


def test_grid_cells_default():
    cells = grid_cells(DEFAULT_GRID)
    assert len(cells) == (8 + 5 + 4) * 4
    assert cells == sorted(cells)
    assert len(grid_cells(DEFAULT_GRID, ["dihedral"], [0])) == 8


def test_grid_override():
    doc = {"families": {"dihedral": [3]}, "chars": [0, 3]}
    assert load_grid({"DERIVA_GRID": json.dumps(doc)}) == doc
    assert load_grid({}) == DEFAULT_GRID
    with pytest.raises(ValueError):
        load_grid({"DERIVA_GRID": "[1, 2]"})


def test_parallel_sweep_matches_serial():
    cells = grid_cells({"families": {"dihedral": [3, 6], "dicyclic": [3]}, "chars": [0, 3]})
    serial = sweep(cells, 1)
    parallel = sweep(cells, 3)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    assert sweep_rows(serial) == sweep_rows(parallel)
    assert summary_line(serial) == "# summary: 6 PASS, 0 FAIL, 6 cells"
