"""The group algebra FG: elements, products, and its distinguished subspaces."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import EmptySubgroup, FieldMismatch, GroupMismatch, NotContained
from .fields import FieldSpec, Scalar
from .groups import FiniteGroup, conjugacy_classes
from .linalg import SubspaceBasis, nullspace


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """``sum(coeffs[g] * g)``; ``coeffs`` is indexed by group element."""

    group: FiniteGroup
    field: FieldSpec
    coeffs: Tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.group.order:
            raise ValueError(f"expected {self.group.order} coefficients, got {len(self.coeffs)}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, G: FiniteGroup, F: FieldSpec) -> "AlgebraElement":
        return cls(G, F, (F.zero,) * G.order)

    @classmethod
    def from_vector(cls, G: FiniteGroup, F: FieldSpec, v: Iterable) -> "AlgebraElement":
        return cls(G, F, tuple(F(x) for x in v))

    @classmethod
    def from_terms(cls, G: FiniteGroup, F: FieldSpec, terms) -> "AlgebraElement":
        """Build from ``{element: coefficient}`` or ``[(coefficient, element), ...]``."""
        c = [F.zero] * G.order
        items = terms.items() if isinstance(terms, dict) else ((g, k) for k, g in terms)
        for g, k in items:
            c[g] = F.add(c[g], F(k))
        return cls(G, F, tuple(c))

    @classmethod
    def basis(cls, G: FiniteGroup, F: FieldSpec, g: int) -> "AlgebraElement":
        return cls.from_terms(G, F, {g: 1})

    @classmethod
    def one(cls, G: FiniteGroup, F: FieldSpec) -> "AlgebraElement":
        return cls.basis(G, F, G.identity)

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "AlgebraElement"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if self.group is not other.group and self.group != other.group:
            raise GroupMismatch(f"{self.group.label} vs {other.group.label}")

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        add = self.field.add
        return AlgebraElement(self.group, self.field, tuple(add(x, y) for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        sub = self.field.sub
        return AlgebraElement(self.group, self.field, tuple(sub(x, y) for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.group, self.field, tuple(self.field.neg(x) for x in self.coeffs))

    def scale(self, k) -> "AlgebraElement":
        F = self.field
        k = F(k)
        return AlgebraElement(self.group, F, tuple(F.mul(k, x) for x in self.coeffs))

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, k) -> "AlgebraElement":
        return self.scale(k)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (self.field == other.field and (self.group is other.group or self.group == other.group)
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.group.label, self.field, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def left(self, g: int) -> "AlgebraElement":
        """``g * self``."""
        c = [self.field.zero] * self.group.order
        row = self.group.cayley[g]
        for h, x in enumerate(self.coeffs):
            c[row[h]] = x
        return AlgebraElement(self.group, self.field, tuple(c))

    def right(self, g: int) -> "AlgebraElement":
        """``self * g``."""
        c = [self.field.zero] * self.group.order
        table = self.group.cayley
        for h, x in enumerate(self.coeffs):
            c[table[h][g]] = x
        return AlgebraElement(self.group, self.field, tuple(c))

    def support(self) -> List[int]:
        return [g for g, x in enumerate(self.coeffs) if x]

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"AlgebraElement({self.group.label}, {self.field}, {format_element(self)})"

    def to_json(self) -> dict:
        return {"coeffs": [self.field.to_json(x) for x in self.coeffs]}

    @classmethod
    def from_json(cls, G: FiniteGroup, F: FieldSpec, doc: dict) -> "AlgebraElement":
        return cls(G, F, tuple(F.from_json(x) for x in doc["coeffs"]))


def format_element(x: AlgebraElement) -> str:
    terms = []
    F = x.field
    for g, k in enumerate(x.coeffs):
        if not k:
            continue
        name = x.group.names[g]
        if F.is_rational and k < 0:
            sign, k = "-", -k
        else:
            sign = "+"
        if k == 1:
            body = name
        elif name == "1":
            body = str(k)
        else:
            body = f"{k}{name}"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    x._check(y)
    F = x.field
    table = x.group.cayley
    add, mul = F.add, F.mul
    c = [F.zero] * x.group.order
    ys = [(h, b) for h, b in enumerate(y.coeffs) if b]
    for g, a in enumerate(x.coeffs):
        if not a:
            continue
        row = table[g]
        for h, b in ys:
            k = row[h]
            c[k] = add(c[k], mul(a, b))
    return AlgebraElement(x.group, F, tuple(c))


def commutator(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """``xy - yx``."""
    return multiply(x, y) - multiply(y, x)


def augmentation(x: AlgebraElement) -> Scalar:
    F = x.field
    out = F.zero
    for k in x.coeffs:
        out = F.add(out, k)
    return out


def class_sums(G: FiniteGroup, F: FieldSpec) -> List[AlgebraElement]:
    return [AlgebraElement.from_terms(G, F, {g: 1 for g in c}) for c in conjugacy_classes(G).classes]


def center_basis(G: FiniteGroup, F: FieldSpec) -> SubspaceBasis:
    """Solve ``z g = g z`` for every generator ``g``."""
    rows = []
    table, inv = G.cayley, G.inverse
    for g in G.generators:
        gi = inv[g]
        for h in range(G.order):
            # (z g)[h] = z[h g^-1],  (g z)[h] = z[g^-1 h]
            u, v = table[h][gi], table[gi][h]
            if u != v:
                rows.append({u: 1, v: -1})
    return nullspace(F, rows, G.order)


def delta_prime_basis(G: FiniteGroup, F: FieldSpec, ambient: Sequence[int], H: Sequence[int]) -> SubspaceBasis:
    """Elements supported on ``ambient`` whose coefficient sums over ``H``
    and over ``ambient - H`` both vanish."""
    A, Hs = set(ambient), set(H)
    if not Hs:
        raise EmptySubgroup("H is empty")
    if not Hs <= A:
        raise NotContained(f"{sorted(Hs - A)} lie outside the ambient set")
    if not A <= set(range(G.order)):
        raise NotContained("ambient set contains non-elements")
    rows = [{g: 1 for g in Hs}]
    rest = A - Hs
    if rest:
        rows.append({g: 1 for g in rest})
    rows.extend({g: 1} for g in range(G.order) if g not in A)
    return nullspace(F, rows, G.order)


def anti_centralizer(beta: AlgebraElement) -> SubspaceBasis:
    """Nullspace of ``alpha -> alpha*beta + beta*alpha``."""
    G, F = beta.group, beta.field
    N = G.order
    table = G.cayley
    rows: List[Dict[int, Scalar]] = [dict() for _ in range(N)]
    for x in range(N):
        for h, k in enumerate(beta.coeffs):
            if not k:
                continue
            for out in (table[x][h], table[h][x]):
                rows[out][x] = F.add(rows[out].get(x, F.zero), k)
    return nullspace(F, rows, N)


def element_from_vector(G: FiniteGroup, F: FieldSpec, v: Sequence[Scalar]) -> AlgebraElement:
    return AlgebraElement(G, F, tuple(v))
