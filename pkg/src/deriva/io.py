"""Reading groups, algebra elements and derivation matrices from files."""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Union

from .algebra import AlgebraElement
from .derivations import DerivationMatrix
from .errors import MalformedInput
from .fields import FieldSpec
from .groups import FiniteGroup, GroupWord, from_cayley

PathLike = Union[str, Path]


def parse_cayley_csv(text: str):
    table = []
    for lineno, row in enumerate(csv.reader(text.splitlines()), 1):
        cells = [c.strip() for c in row if c.strip() != ""]
        if not cells:
            continue
        try:
            table.append([int(c) for c in cells])
        except ValueError:
            raise MalformedInput(f"line {lineno}: entries must be integers") from None
    return table


def group_from_document(doc: dict, label: str = "G") -> FiniteGroup:
    """Build a group from ``{"table": [[...]], "generators"?, "relators"?, "names"?}``."""
    if not isinstance(doc, dict) or not isinstance(doc.get("table"), list):
        raise MalformedInput('expected a JSON object with a "table" array')
    relators = [GroupWord.parse(r) for r in doc.get("relators", [])]
    return from_cayley(doc["table"], doc.get("generators"), relators, doc.get("names"), label)


def read_cayley(path: PathLike) -> FiniteGroup:
    """Load a Cayley table from ``.json`` (key ``"table"``) or CSV (one row per line)."""
    path = Path(path)
    text = _read_text(path)
    if path.suffix.lower() == ".json":
        return group_from_document(_load_json(text, path), label=path.stem)
    return from_cayley(parse_cayley_csv(text), label=path.stem)


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None


def _load_json(text: str, origin) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{origin}: invalid JSON ({exc.msg})") from None


def read_derivation(path: PathLike, G: FiniteGroup, F: FieldSpec) -> DerivationMatrix:
    doc = _load_json(_read_text(path), path)
    if not isinstance(doc, dict) or "columns" not in doc:
        raise MalformedInput('expected a JSON object with a "columns" array')
    try:
        return DerivationMatrix.from_json(G, F, doc)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(str(exc)) from None


def read_element(path: PathLike, G: FiniteGroup, F: FieldSpec) -> AlgebraElement:
    doc = _load_json(_read_text(path), path)
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise MalformedInput('expected a JSON object with a "coeffs" array')
    try:
        return AlgebraElement.from_json(G, F, doc)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(str(exc)) from None


def write_json(obj, path: PathLike) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")
