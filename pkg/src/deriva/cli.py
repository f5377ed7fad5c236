"""``deriva`` command-line interface.

Exit codes: 0 success, 1 a verified statement failed, 2 usage error,
3 invalid input data (not a group, not a derivation, unreadable file).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import errors
from .algebra import format_element
from .derivations import derivation_space, inner_derivation_space, innerness_witness
from .families import FAMILY_NAMES, FamilySpec
from .fields import FieldSpec, is_prime, make_field
from .groups import FiniteGroup, conjugacy_classes, family_group
from .io import read_cayley, read_derivation
from .verify import (PASS, SWEEP_COLUMNS, VerificationReport, grid_cells, load_grid, summary_line,
                     sweep, sweep_rows, verify_family, verify_inner_only)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3

USAGE_ERRORS = (errors.ParameterTooSmall, errors.CharTwoUnsupported, errors.CompositeCharacteristic,
                errors.UnsupportedTag)
DATA_ERRORS = (errors.NotAGroup, errors.RelatorViolation, errors.NotADerivation,
               errors.MalformedInput, errors.RaggedInput)


class UsageError(Exception):
    pass


def _characteristic(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if p != 0 and not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is neither 0 nor a prime")
    return p


def _char_list(text: str) -> List[int]:
    return [_characteristic(t) for t in text.split(",") if t.strip()]


def _family_list(text: str) -> List[str]:
    out = [t.strip() for t in text.split(",") if t.strip()]
    bad = [f for f in out if f not in FAMILY_NAMES]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown families {bad}; choose from {list(FAMILY_NAMES)}")
    return out


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        k = 0
    if k < 1:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), help="output format")
    common.add_argument("--out", type=Path, help="write output here instead of stdout")
    common.add_argument("--allow-degenerate", action="store_true",
                        help="permit the degenerate dicyclic n=1 group")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--family", choices=FAMILY_NAMES)
    source.add_argument("--n", type=int)
    source.add_argument("--cayley", type=Path, help="Cayley table as CSV or JSON")
    source.add_argument("--char", type=_characteristic, default=0,
                        help="field characteristic: 0 or a prime (default 0)")

    parser = argparse.ArgumentParser(prog="deriva", description="Derivations of finite group algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classes", parents=[common, source], help="conjugacy classes")
    sub.add_parser("dimensions", parents=[common, source], help="derivation space dimensions")
    v = sub.add_parser("verify", parents=[common, source], help="check the closed-form results")
    v.add_argument("--inner-only", action="store_true",
                   help="only the inner-derivation checks (allowed in characteristic 2)")
    s = sub.add_parser("sweep", parents=[common], help="verify a grid of instances")
    s.add_argument("--families", type=_family_list, help="comma-separated family names")
    s.add_argument("--chars", type=_char_list, help="comma-separated characteristics")
    s.add_argument("--parallel", type=_positive, default=1, help="worker processes")
    w = sub.add_parser("witness", parents=[common, source], help="innerness test for a derivation")
    w.add_argument("derivation", type=Path, help='JSON file {"columns": [...]}')
    return parser


# -- helpers ---------------------------------------------------------------------

def _group(args) -> FiniteGroup:
    has_family = args.family is not None or args.n is not None
    if has_family == (args.cayley is not None):
        raise UsageError("give exactly one group source: --family with --n, or --cayley")
    if args.cayley is not None:
        return read_cayley(args.cayley)
    if args.family is None or args.n is None:
        raise UsageError("--family and --n go together")
    return family_group(args.family, args.n, args.allow_degenerate)


def _csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(args, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _describe_group(G: FiniteGroup) -> str:
    return f"{G.label} (order {G.order})"


# -- commands ----------------------------------------------------------------------

def cmd_classes(args) -> int:
    G = _group(args)
    cc = conjugacy_classes(G)
    rows = [{"index": i, "size": len(c), "representative": G.names[rep],
             "members": [G.names[x] for x in c], "member_indices": list(c)}
            for i, (c, rep) in enumerate(zip(cc.classes, cc.representatives))]
    fmt = args.format or "text"
    if fmt == "json":
        out = _json({"group": G.label, "order": G.order, "class_count": cc.class_count,
                     "central_count": cc.central_count, "classes": rows})
    elif fmt == "csv":
        out = _csv(("index", "size", "representative", "members"),
                   [(r["index"], r["size"], r["representative"], " ".join(r["members"])) for r in rows])
    else:
        lines = [f"{_describe_group(G)}: {cc.class_count} classes, {cc.central_count} central"]
        lines += [f"  C{r['index'] + 1} [{r['size']}] {{{', '.join(r['members'])}}}" for r in rows]
        out = "\n".join(lines) + "\n"
    _emit(args, out)
    return EXIT_OK


def dimension_row(G: FiniteGroup, F: FieldSpec) -> dict:
    der = derivation_space(G, F)
    inner, _ = inner_derivation_space(G, F)
    return {"group": G.label, "order": G.order, "char": F.characteristic,
            "der": der.dimension, "inner": inner.dimension,
            "outer": der.dimension - inner.dimension,
            "class_count": conjugacy_classes(G).class_count}


def cmd_dimensions(args) -> int:
    G = _group(args)
    row = dimension_row(G, make_field(args.char))
    fmt = args.format or "text"
    if fmt == "json":
        out = _json(row)
    elif fmt == "csv":
        out = _csv(list(row), [list(row.values())])
    else:
        out = (f"{_describe_group(G)} over {make_field(args.char)}: der {row['der']}, "
               f"inner {row['inner']}, outer {row['outer']}, classes {row['class_count']}\n")
    _emit(args, out)
    return EXIT_OK


def _report_text(r: VerificationReport) -> str:
    s = r.spec
    d = r.computed_dims
    lines = [f"{s.family} n={s.n} over {s.field} [{s.regime}]: {r.status}",
             f"  dims: der {d['der']}, inner {d['inner']}, outer {d['outer']}"
             f" (expected {r.expected_dims['der']}, {r.expected_dims['inner']}, {r.expected_dims['outer']})"]
    for c in r.checks:
        lines.append(f"  [{'ok' if c.passed else 'FAIL'}] {c.name}" + (f": {c.detail}" if c.detail else ""))
    if r.variant_notes:
        lines.append("  variant notes:")
        lines += [f"    - {note}" for note in r.variant_notes]
    lines.append("  claimed basis (image of a, image of b):")
    lines += [f"    {b['assignment']}" for b in r.basis_checks]
    for note in r.annotations:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if args.cayley is not None:
        raise UsageError("verify needs a family instance (--family, --n)")
    if args.family is None or args.n is None:
        raise UsageError("verify needs --family and --n")
    F = make_field(args.char)
    if args.inner_only:
        family_group(args.family, args.n, args.allow_degenerate)
        checks = verify_inner_only(args.family, args.n, F)
        ok = all(c.passed for c in checks)
        doc = {"spec": {"family": args.family, "n": args.n, "characteristic": args.char},
               "checks": [c.to_json() for c in checks], "status": "PASS" if ok else "FAIL"}
        fmt = args.format or "text"
        if fmt == "json":
            out = _json(doc)
        elif fmt == "csv":
            out = _csv(("name", "pass", "detail"), [(c.name, c.passed, c.detail) for c in checks])
        else:
            out = "".join(f"[{'ok' if c.passed else 'FAIL'}] {c.name}: {c.detail}\n" for c in checks)
            out += f"{doc['status']}\n"
        _emit(args, out)
        return EXIT_OK if ok else EXIT_MISMATCH
    spec = FamilySpec(args.family, args.n, F)
    family_group(args.family, args.n, args.allow_degenerate)
    report = verify_family(spec)
    fmt = args.format or "text"
    if fmt == "json":
        out = _json(report.to_json())
    elif fmt == "csv":
        out = _csv(SWEEP_COLUMNS, sweep_rows([report]))
    else:
        out = _report_text(report)
    _emit(args, out)
    if report.status != PASS:
        bad = report.first_divergence
        print(f"first divergence: {bad.name}: {bad.detail}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def render_sweep(reports: Sequence[VerificationReport], fmt: str) -> str:
    if fmt == "json":
        return _json({"reports": [r.to_json() for r in reports], "summary": summary_line(reports)})
    if fmt == "text":
        lines = []
        for r in reports:
            d = r.computed_dims
            bad = r.first_divergence
            lines.append(f"{r.spec.family:<13} n={r.spec.n:<3} char={r.spec.field.characteristic:<2} "
                         f"{r.spec.regime:<8} der={d['der']:<3} inner={d['inner']:<3} outer={d['outer']:<3} "
                         f"{r.status}" + (f" ({bad.name})" if bad else ""))
        return "\n".join(lines + [summary_line(reports)]) + "\n"
    return _csv(SWEEP_COLUMNS, sweep_rows(reports)) + summary_line(reports) + "\n"


def cmd_sweep(args) -> int:
    try:
        grid = load_grid()
    except ValueError as exc:
        raise UsageError(f"DERIVA_GRID: {exc}") from None
    cells = grid_cells(grid, args.families, args.chars)
    if any(p == 2 for _, _, p in cells):
        raise errors.CharTwoUnsupported("family sweeps need characteristic 0 or an odd prime")
    if any(p != 0 and not is_prime(p) for _, _, p in cells):
        raise errors.CompositeCharacteristic("grid contains a composite characteristic")
    reports = sweep(cells, args.parallel)
    _emit(args, render_sweep(reports, args.format or "csv"))
    return EXIT_OK if all(r.status == PASS for r in reports) else EXIT_MISMATCH


def cmd_witness(args) -> int:
    G = _group(args)
    F = make_field(args.char)
    D = read_derivation(args.derivation, G, F)
    beta = innerness_witness(D)
    fmt = args.format or "text"
    if beta is None:
        out = "OUTER\n"
    elif fmt == "json":
        out = _json(beta.to_json())
    elif fmt == "csv":
        out = _csv([G.names[g] for g in range(G.order)], [[F.to_json(x) for x in beta.coeffs]])
    else:
        out = format_element(beta) + "\n"
    _emit(args, out)
    return EXIT_OK


COMMANDS = {"classes": cmd_classes, "dimensions": cmd_dimensions, "verify": cmd_verify,
            "sweep": cmd_sweep, "witness": cmd_witness}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except USAGE_ERRORS as exc:
        print(f"deriva: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"deriva: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        # remaining ValueErrors come from bad parameters such as an unknown family
        print(f"deriva: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
