"""Exact row reduction over a :class:`~deriva.fields.FieldSpec`.

Every solution space in the package is returned as a :class:`SubspaceBasis`,
whose rows are the reduced row-echelon basis in natural column order.  That
form is canonical, so two subspaces are equal exactly when their
``SubspaceBasis`` values compare equal.

The elimination core works on sparse rows (``dict`` column -> nonzero
scalar).  Callers may pass a ``column_order`` to steer pivot selection; the
canonical output does not depend on it, only the running time does.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import RaggedInput
from .fields import FieldSpec, Scalar

SparseRow = Dict[int, Scalar]


@dataclass(frozen=True)
class SubspaceBasis:
    field: FieldSpec
    ambient_dim: int
    rows: Tuple[Tuple[Scalar, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> List[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.rows]

    @classmethod
    def span(cls, F: FieldSpec, ambient_dim: int, vectors: Iterable[Sequence[Scalar]]):
        """Canonical basis of the span of ``vectors``."""
        return cls(F, ambient_dim, tuple(rref(F, vectors, ambient_dim)))

    @classmethod
    def zero(cls, F: FieldSpec, ambient_dim: int):
        return cls(F, ambient_dim, ())

    @classmethod
    def full(cls, F: FieldSpec, ambient_dim: int):
        eye = [[F.one if i == j else F.zero for j in range(ambient_dim)] for i in range(ambient_dim)]
        return cls.span(F, ambient_dim, eye)

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise RaggedInput(f"vector of length {len(v)} in ambient dimension {self.ambient_dim}")
        F = self.field
        w = [F(x) for x in v]
        for row, piv in zip(self.rows, self.pivots):
            f = w[piv]
            if f:
                for j in range(piv, self.ambient_dim):
                    if row[j]:
                        w[j] = F.submul(w[j], f, row[j])
        return not any(w)

    def is_subspace_of(self, other: "SubspaceBasis") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "SubspaceBasis") -> "SubspaceBasis":
        return SubspaceBasis.span(self.field, self.ambient_dim, list(self.rows) + list(other.rows))

    def coordinates(self, v: Sequence[Scalar]) -> Optional[List[Scalar]]:
        """Coefficients of ``v`` in terms of ``rows``, or None if ``v`` is outside."""
        if not self.contains(v):
            return None
        return [self.field(v[p]) for p in self.pivots]


def _sparse(F: FieldSpec, row, ncols: int) -> SparseRow:
    if isinstance(row, dict):
        out = {}
        for c, x in row.items():
            if not 0 <= c < ncols:
                raise RaggedInput(f"column {c} outside 0..{ncols - 1}")
            x = F(x)
            if x:
                out[c] = x
        return out
    if len(row) != ncols:
        raise RaggedInput(f"row of length {len(row)}, expected {ncols}")
    out = {}
    for c, x in enumerate(row):
        x = F(x)
        if x:
            out[c] = x
    return out


def row_reduce(F: FieldSpec, rows: Iterable, ncols: int,
               column_order: Optional[Sequence[int]] = None) -> Dict[int, SparseRow]:
    """Fully reduce ``rows``; returns ``{pivot column: normalized row}``.

    Each returned row has a 1 in its pivot column and no entries in any other
    pivot column.  Pivots are chosen greedily along ``column_order``.
    """
    if column_order is None:
        pos = list(range(ncols))
    else:
        if sorted(column_order) != list(range(ncols)):
            raise ValueError("column_order must be a permutation of range(ncols)")
        pos = [0] * ncols
        for rank, c in enumerate(column_order):
            pos[c] = rank
    key = pos.__getitem__
    submul, inv, mul = F.submul, F.inv, F.mul

    pivots: Dict[int, SparseRow] = {}
    for raw in rows:
        row = _sparse(F, raw, ncols)
        while row:
            lead = min(row, key=key)
            prow = pivots.get(lead)
            if prow is None:
                s = inv(row[lead])
                pivots[lead] = {c: mul(s, x) for c, x in row.items()}
                break
            f = row[lead]
            for c, x in prow.items():
                y = submul(row.get(c, 0), f, x)
                if y:
                    row[c] = y
                else:
                    row.pop(c, None)

    # Back-substitution, deepest pivot first, so every row only meets rows
    # that are already free of other pivot columns.
    for lead in sorted(pivots, key=key, reverse=True):
        row = pivots[lead]
        for c in [c for c in row if c != lead and c in pivots]:
            f = row.get(c)
            if not f:
                continue
            for cc, x in pivots[c].items():
                y = submul(row.get(cc, 0), f, x)
                if y:
                    row[cc] = y
                else:
                    row.pop(cc, None)
    return pivots


def rref(F: FieldSpec, vectors: Iterable[Sequence[Scalar]], ncols: int) -> List[Tuple[Scalar, ...]]:
    """Canonical reduced row-echelon form (zero rows dropped), natural column order."""
    pivots = row_reduce(F, vectors, ncols)
    zero = F.zero
    out = []
    for lead in sorted(pivots):
        row = pivots[lead]
        out.append(tuple(row.get(c, zero) for c in range(ncols)))
    return out


def rank(F: FieldSpec, vectors: Iterable[Sequence[Scalar]], ncols: int) -> int:
    return len(row_reduce(F, vectors, ncols))


def nullspace(F: FieldSpec, rows: Iterable, ncols: Optional[int] = None,
              column_order: Optional[Sequence[int]] = None) -> SubspaceBasis:
    """Canonical basis of ``{v : R v = 0}``.

    ``rows`` may be dense sequences or sparse ``dict`` rows; ``ncols`` is
    required when it cannot be read off the first dense row.
    """
    rows = list(rows)
    if ncols is None:
        if not rows or isinstance(rows[0], dict):
            raise RaggedInput("ncols is required for empty or sparse input")
        ncols = len(rows[0])
    pivots = row_reduce(F, rows, ncols, column_order)
    free = [c for c in range(ncols) if c not in pivots]
    zero = F.zero
    basis = []
    for j in free:
        v = [zero] * ncols
        v[j] = F.one
        for lead, row in pivots.items():
            x = row.get(j)
            if x:
                v[lead] = F.neg(x)
        basis.append(v)
    return SubspaceBasis.span(F, ncols, basis)


def solve(F: FieldSpec, rows: Iterable, rhs: Sequence[Scalar], ncols: int,
          column_order: Optional[Sequence[int]] = None) -> Optional[List[Scalar]]:
    """One solution of ``R x = rhs`` (free variables set to zero), or None."""
    rows = list(rows)
    if len(rows) != len(rhs):
        raise RaggedInput("row count and right-hand side length differ")
    aug = []
    for r, b in zip(rows, rhs):
        row = dict(_sparse(F, r, ncols))
        b = F(b)
        if b:
            row[ncols] = b
        aug.append(row)
    order = list(range(ncols)) if column_order is None else list(column_order)
    pivots = row_reduce(F, aug, ncols + 1, order + [ncols])
    if ncols in pivots:
        return None
    x = [F.zero] * ncols
    for lead, row in pivots.items():
        x[lead] = row.get(ncols, F.zero)
    return x
