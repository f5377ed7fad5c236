"""Per-instance verification of the closed-form results for the three families.

:func:`verify_family` recomputes everything from scratch (classes, center,
anti-centralizers, the derivation space by two independent solvers, inner
derivations) and compares it against the closed-form counts and explicit
bases in :mod:`deriva.families`.  :func:`sweep` runs a grid of instances and
merges the reports in a fixed order, so output never depends on scheduling.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (AlgebraElement, anti_centralizer, center_basis, class_sums,
                      delta_prime_basis)
from .derivations import (DerivationMatrix, FailureReport, extend_generator_map,
                          derivation_space, generator_derivation_space, inner_derivation,
                          inner_derivation_space, innerness_witness, lift_generator_space)
from .families import (MODULAR, REGULAR, FamilySpec, anticentralizer_tags,
                       expected_anticentralizer_dim, expected_class_count, expected_classes,
                       expected_der_dim, expected_inner_dim, family_basis, family_inner_basis,
                       family_anticentralizer_basis, tag_element)
from .fields import FieldSpec, make_field
from .groups import FiniteGroup, conjugacy_classes, cyclic_part, family_group
from .linalg import SubspaceBasis, rank

PASS = "PASS"
FAIL = "FAIL"

DEFAULT_GRID = {
    "families": {"dihedral": list(range(3, 11)), "dicyclic": list(range(2, 7)),
                 "semidihedral": list(range(1, 5))},
    "chars": [0, 3, 5, 7],
}

UNKNOWN_ORDER = "f(a) coefficients, then f(b)"

LINEARITY_NOTE = ("every derivation kills the prime field, so over Q and GF(p) the "
                  "F-linear derivations computed here are all derivations of FG")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class VerificationReport:
    spec: FamilySpec
    expected_dims: Dict[str, int]
    computed_dims: Dict[str, int]
    class_count: Dict[str, int]
    checks: List[Check] = field(default_factory=list)
    basis_checks: List[Dict[str, object]] = field(default_factory=list)
    span_equal: bool = False
    anticentralizer_checks: Dict[str, Dict[str, object]] = field(default_factory=dict)
    variant_notes: List[str] = field(default_factory=list)
    annotations: List[str] = field(default_factory=list)
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return PASS if self.checks and all(c.passed for c in self.checks) else FAIL

    @property
    def first_divergence(self) -> Optional[Check]:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        bad = self.first_divergence
        return {
            "spec": self.spec.to_json(),
            "dims": dict(self.computed_dims),
            "expected_dims": dict(self.expected_dims),
            "class_count": dict(self.class_count),
            "checks": [c.to_json() for c in self.checks],
            "basis_checks": self.basis_checks,
            "span_equal": self.span_equal,
            "anticentralizer_checks": self.anticentralizer_checks,
            "status": self.status,
            "first_divergence": None if bad is None else bad.to_json(),
            "variant_notes": list(self.variant_notes),
            "annotations": list(self.annotations),
            "metadata": self.metadata,
        }


class _Recorder:
    def __init__(self):
        self.checks: List[Check] = []

    def __call__(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)


def _span(F: FieldSpec, dim: int, vecs) -> SubspaceBasis:
    return SubspaceBasis.span(F, dim, vecs)


def _prefix_independence(F: FieldSpec, dim: int, vecs: Sequence[Sequence]) -> List[bool]:
    """``out[i]`` is True when ``vecs[i]`` is outside the span of ``vecs[:i]``."""
    out, kept = [], []
    running = SubspaceBasis.zero(F, dim)
    for v in vecs:
        fresh = not running.contains(v)
        out.append(fresh)
        if fresh:
            kept.append(v)
            running = _span(F, dim, kept)
    return out


def _check_classes(rec, G: FiniteGroup, spec: FamilySpec):
    cc = conjugacy_classes(G)
    want = expected_class_count(spec.family, spec.n)
    rec("class_count", cc.class_count == want, f"computed {cc.class_count}, expected {want}")
    listed = expected_classes(G)
    rec("class_list", sorted(cc.classes) == listed,
        "orbit partition matches the closed-form class list" if sorted(cc.classes) == listed
        else f"computed {sorted(cc.classes)} vs listed {listed}")
    return cc


def _check_center(rec, G, F):
    Z = center_basis(G, F)
    sums = _span(F, G.order, [x.coeffs for x in class_sums(G, F)])
    rec("center_equals_class_sums", Z == sums, f"dim Z = {Z.dimension}, class sums span {sums.dimension}")


def _check_anticentralizers(rec, report, G, F, spec):
    want = expected_anticentralizer_dim(spec.family, spec.n)
    for tag in anticentralizer_tags(spec.family, spec.n):
        beta = AlgebraElement.basis(G, F, tag_element(G, tag))
        claimed = family_anticentralizer_basis(spec.family, spec.n, F, tag)
        anticommute = all(not (x * beta + beta * x) for x in claimed)
        independent = rank(F, [x.coeffs for x in claimed], G.order) == len(claimed)
        computed = anti_centralizer(beta)
        span_ok = _span(F, G.order, [x.coeffs for x in claimed]) == computed
        report.anticentralizer_checks[tag] = {
            "claimed": len(claimed), "computed_dim": computed.dimension, "expected_dim": want,
            "anticommute": anticommute, "independent": independent, "span_equal": span_ok}
        rec(f"anticentralizer[{tag}].anticommute", anticommute, f"{len(claimed)} claimed elements")
        rec(f"anticentralizer[{tag}].independent", independent)
        rec(f"anticentralizer[{tag}].span_equal", span_ok, f"computed dim {computed.dimension}")
        rec(f"anticentralizer[{tag}].dimension", computed.dimension == want,
            f"computed {computed.dimension}, expected {want}")


def _check_claimed_basis(rec, report, G, F, spec, der: SubspaceBasis):
    notes: List[str] = []
    claimed = family_basis(spec.family, spec.n, F, notes)
    report.variant_notes.extend(notes)
    mats: List[Optional[DerivationMatrix]] = []
    failures = []
    for i, f in enumerate(claimed):
        D = extend_generator_map(f)
        if isinstance(D, FailureReport):
            failures.append(f"#{i} {f}: {D.describe()}")
            mats.append(None)
        else:
            mats.append(D)
    good = [D.flatten() for D in mats if D is not None]
    fresh = iter(_prefix_independence(F, G.order ** 2, good))
    for f, D in zip(claimed, mats):
        report.basis_checks.append({"assignment": str(f), "is_derivation": D is not None,
                                    "independent": D is not None and next(fresh)})
    rec("basis.extends", not failures, "; ".join(failures) or f"all {len(claimed)} assignments extend")
    independent = not failures and all(b["independent"] for b in report.basis_checks)
    rec("basis.independent", independent)
    report.span_equal = _span(F, G.order ** 2, good) == der
    rec("basis.span_equals_derivation_space", report.span_equal,
        f"claimed {len(claimed)}, dim der = {der.dimension}")
    want = expected_der_dim(spec.family, spec.n, F)
    rec("der.dimension", der.dimension == want, f"computed {der.dimension}, expected {want}")
    return [D for D in mats if D is not None]


def _check_identity_column(rec, G, F, der):
    N = G.order
    e = G.identity
    ok = all(not any(v[e * N:(e + 1) * N]) for v in der.rows)
    rec("d(1)=0", ok, f"checked {der.dimension} basis derivations")


def _check_inner(rec, G, F, spec, cc, der):
    inner, b0 = inner_derivation_space(G, F)
    N = G.order
    want = N - cc.class_count
    rec("inner.dimension", inner.dimension == want == expected_inner_dim(spec.family, spec.n),
        f"computed {inner.dimension}, |G|-r = {want}, closed form {expected_inner_dim(spec.family, spec.n)}")
    listed = family_inner_basis(spec.family, spec.n, F)
    for name, wits in (("listed", listed), ("class_complement", b0)):
        vecs = [inner_derivation(AlgebraElement.basis(G, F, g)).flatten() for g in wits]
        ok = len(wits) == want and _span(F, N * N, vecs) == inner
        rec(f"inner.{name}_witnesses_span", ok, f"{len(wits)} witnesses")
    rec("inner_within_der", inner.is_subspace_of(der))
    return inner


def _check_outer(rec, spec, der, inner, mats):
    outer = der.dimension - inner.dimension
    regular = spec.regime == REGULAR
    rec("outer.regime", (outer == 0) == regular, f"outer dim {outer} in {spec.regime} regime")
    if regular:
        # the closed-form derivation count must agree with |G| - r
        rec("outer.cross_formula", der.dimension == inner.dimension,
            f"der {der.dimension} vs inner {inner.dimension}")
    mismatches, outer_found = [], 0
    for i, D in enumerate(mats):
        beta = innerness_witness(D)
        member = inner.contains(D.flatten())
        if beta is None:
            outer_found += 1
            if member:
                mismatches.append(f"#{i}: no witness but inside the inner space")
        elif not member or inner_derivation(beta) != D:
            mismatches.append(f"#{i}: witness does not reproduce the derivation")
    rec("outer.witness_agreement", not mismatches, "; ".join(mismatches) or
        f"{outer_found} of {len(mats)} claimed derivations have no innerness witness")
    if not regular:
        rec("outer.example_found", outer_found > 0, f"{outer_found} outer basis derivations")
    return outer


def _check_delta_prime(rec, G, F, spec, der):
    """Shape of ``f(a) = alpha + beta*b`` for computed derivations."""
    N, m = G.order, G.cyclic_order
    a = G.elem(1)
    ambient = cyclic_part(G, a)
    sub2 = delta_prime_basis(G, F, ambient, cyclic_part(G, G.elem(2)))
    sub4 = None
    odd_sd = spec.family == "semidihedral" and spec.n % 2 == 1
    if odd_sd:
        sub4 = delta_prime_basis(G, F, ambient, cyclic_part(G, G.elem(4)))
    alpha_zero, in_delta = True, True
    for v in der.rows:
        fa = v[a * N:(a + 1) * N]
        alpha, beta = list(fa[:m]), list(fa[m:2 * m])
        if any(alpha):
            alpha_zero = False
        beta_vec = beta + [F.zero] * (N - m)
        ok = sub2.contains(beta_vec)
        if odd_sd:
            ok = ok and sub4.contains(beta_vec)
            for r in (1, 3):
                total = F.zero
                for i in range(r, m, 4):
                    total = F.add(total, beta[i])
                ok = ok and not total
        in_delta = in_delta and ok
    if spec.regime == REGULAR:
        rec("delta_prime.alpha_zero", alpha_zero, "f(a) has no component in F<a>")
    extra = " and the <a^4> conditions" if odd_sd else ""
    rec("delta_prime.beta_membership", in_delta, f"beta lies in Delta'(<a^2>){extra}")


def verify_family(spec: FamilySpec) -> VerificationReport:
    G = family_group(spec.family, spec.n)
    F = spec.field
    rec = _Recorder()
    want_der = expected_der_dim(spec.family, spec.n, F)
    want_inner = expected_inner_dim(spec.family, spec.n)
    report = VerificationReport(
        spec=spec,
        expected_dims={"der": want_der, "inner": want_inner, "outer": want_der - want_inner},
        computed_dims={},
        class_count={"expected": expected_class_count(spec.family, spec.n)},
    )
    cc = _check_classes(rec, G, spec)
    report.class_count["computed"] = cc.class_count
    _check_center(rec, G, F)
    _check_anticentralizers(rec, report, G, F, spec)

    der = derivation_space(G, F)
    mats = _check_claimed_basis(rec, report, G, F, spec, der)
    lifted = lift_generator_space(G, F, generator_derivation_space(G, F))
    rec("oracle_equivalence", lifted == der,
        f"relator solver dim {lifted.dimension}, Leibniz solver dim {der.dimension}")
    _check_identity_column(rec, G, F, der)
    inner = _check_inner(rec, G, F, spec, cc, der)
    outer = _check_outer(rec, spec, der, inner, mats)
    _check_delta_prime(rec, G, F, spec, der)

    report.computed_dims = {"der": der.dimension, "inner": inner.dimension, "outer": outer}
    report.checks = rec.checks
    report.annotations.append(LINEARITY_NOTE)
    if G.degenerate:
        report.annotations.append(f"{G.label} is abelian; included as the degenerate n={spec.n} member")
    report.metadata = {
        "order": G.order,
        "class_representatives": [G.names[x] for x in cc.representatives],
        "unknown_order": UNKNOWN_ORDER,
    }
    return report


def verify_inner_only(family: str, n: int, F: FieldSpec) -> List[Check]:
    """Inner-derivation checks that hold in every characteristic, 2 included."""
    G = family_group(family, n)
    rec = _Recorder()
    cc = conjugacy_classes(G)
    inner, b0 = inner_derivation_space(G, F)
    want = G.order - cc.class_count
    rec("inner.dimension", inner.dimension == want, f"computed {inner.dimension}, |G|-r = {want}")
    N = G.order
    for name, wits in (("listed", family_inner_basis(family, n, F)), ("class_complement", b0)):
        vecs = [inner_derivation(AlgebraElement.basis(G, F, g)).flatten() for g in wits]
        rec(f"inner.{name}_witnesses_span", len(wits) == want and _span(F, N * N, vecs) == inner,
            f"{len(wits)} witnesses")
    return rec.checks


# -- sweeps -----------------------------------------------------------------------

def load_grid(env: Optional[Dict[str, str]] = None) -> dict:
    """The sweep grid, overridable by a JSON document in ``DERIVA_GRID``."""
    env = os.environ if env is None else env
    raw = env.get("DERIVA_GRID")
    if not raw:
        return json.loads(json.dumps(DEFAULT_GRID))
    doc = json.loads(raw)
    if not isinstance(doc, dict) or not isinstance(doc.get("families"), dict) or "chars" not in doc:
        raise ValueError('DERIVA_GRID must look like {"families": {"dihedral": [3, 4]}, "chars": [0, 3]}')
    return doc


def grid_cells(grid: dict, families: Optional[Iterable[str]] = None,
               chars: Optional[Iterable[int]] = None) -> List[Tuple[str, int, int]]:
    fams = grid["families"]
    wanted_f = set(fams) if families is None else set(families)
    wanted_c = list(grid["chars"]) if chars is None else list(chars)
    cells = {(f, int(n), int(p)) for f in fams if f in wanted_f for n in fams[f] for p in wanted_c}
    return sorted(cells)


def _run_cell(cell: Tuple[str, int, int]) -> VerificationReport:
    family, n, p = cell
    return verify_family(FamilySpec(family, n, make_field(p)))


def sweep(cells: Sequence[Tuple[str, int, int]], parallel: int = 1) -> List[VerificationReport]:
    """Verify each cell; results come back in the order of ``cells``."""
    cells = list(cells)
    if parallel <= 1 or len(cells) <= 1:
        return [_run_cell(c) for c in cells]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        return list(pool.map(_run_cell, cells))


SWEEP_COLUMNS = ("family", "n", "char", "regime", "order", "classes", "der", "inner", "outer",
                 "expected_der", "expected_inner", "status", "first_divergence")


def sweep_rows(reports: Sequence[VerificationReport]) -> List[List[object]]:
    rows = []
    for r in reports:
        bad = r.first_divergence
        rows.append([r.spec.family, r.spec.n, r.spec.field.characteristic, r.spec.regime,
                     r.metadata.get("order", ""), r.class_count.get("computed", ""),
                     r.computed_dims["der"], r.computed_dims["inner"], r.computed_dims["outer"],
                     r.expected_dims["der"], r.expected_dims["inner"], r.status,
                     "" if bad is None else bad.name])
    return rows


def summary_line(reports: Sequence[VerificationReport]) -> str:
    ok = sum(r.status == PASS for r in reports)
    return f"# summary: {ok} PASS, {len(reports) - ok} FAIL, {len(reports)} cells"
