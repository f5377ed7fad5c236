"""Derivations of FG: the brute-force Leibniz solver, inner derivations, word
derivatives of generator assignments, and the relator-based solver.

A linear map on FG is stored by its columns: ``columns[g]`` holds the
coefficients of ``d(g)``.  Flattened, coordinate ``g*N + h`` is the
coefficient of ``h`` in ``d(g)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from .algebra import AlgebraElement
from .errors import FieldMismatch, GroupMismatch, NoRelators, NotADerivation
from .fields import FieldSpec, Scalar
from .groups import FiniteGroup, GroupWord, conjugacy_classes
from .linalg import SubspaceBasis, nullspace, solve


@dataclass(frozen=True, eq=False)
class DerivationMatrix:
    group: FiniteGroup
    field: FieldSpec
    columns: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def zero(cls, G: FiniteGroup, F: FieldSpec) -> "DerivationMatrix":
        col = (F.zero,) * G.order
        return cls(G, F, (col,) * G.order)

    @classmethod
    def from_flat(cls, G: FiniteGroup, F: FieldSpec, v: Sequence[Scalar]) -> "DerivationMatrix":
        N = G.order
        if len(v) != N * N:
            raise ValueError(f"expected {N * N} entries, got {len(v)}")
        return cls(G, F, tuple(tuple(F(x) for x in v[g * N:(g + 1) * N]) for g in range(N)))

    @classmethod
    def from_images(cls, images: Sequence[AlgebraElement]) -> "DerivationMatrix":
        G, F = images[0].group, images[0].field
        return cls(G, F, tuple(x.coeffs for x in images))

    def flatten(self) -> List[Scalar]:
        return [x for col in self.columns for x in col]

    def column(self, g: int) -> AlgebraElement:
        return AlgebraElement(self.group, self.field, self.columns[g])

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        F = self.field
        out = [F.zero] * self.group.order
        for g, k in enumerate(x.coeffs):
            if k:
                for h, v in enumerate(self.columns[g]):
                    if v:
                        out[h] = F.add(out[h], F.mul(k, v))
        return AlgebraElement(self.group, F, tuple(out))

    def __add__(self, other: "DerivationMatrix") -> "DerivationMatrix":
        add = self.field.add
        return DerivationMatrix(self.group, self.field, tuple(
            tuple(add(x, y) for x, y in zip(c, d)) for c, d in zip(self.columns, other.columns)))

    def scale(self, k) -> "DerivationMatrix":
        F = self.field
        k = F(k)
        return DerivationMatrix(self.group, F, tuple(tuple(F.mul(k, x) for x in c) for c in self.columns))

    def __eq__(self, other):
        if not isinstance(other, DerivationMatrix):
            return NotImplemented
        return self.field == other.field and self.columns == other.columns

    def __bool__(self):
        return any(any(c) for c in self.columns)

    def to_json(self) -> dict:
        return {"columns": [[self.field.to_json(x) for x in c] for c in self.columns]}

    @classmethod
    def from_json(cls, G: FiniteGroup, F: FieldSpec, doc: dict) -> "DerivationMatrix":
        cols = doc["columns"]
        if len(cols) != G.order or any(len(c) != G.order for c in cols):
            raise ValueError(f"derivation matrix must be {G.order} x {G.order}")
        return cls(G, F, tuple(tuple(F.from_json(x) for x in c) for c in cols))


@dataclass(frozen=True)
class GeneratorAssignment:
    """Images ``f(x)`` of the group generators, in generator order."""

    images: Tuple[AlgebraElement, ...]

    def __post_init__(self):
        if not self.images:
            raise ValueError("an assignment needs at least one image")
        G, F = self.group, self.field
        for x in self.images:
            if x.field != F:
                raise FieldMismatch(f"{x.field} vs {F}")
            if x.group is not G and x.group != G:
                raise GroupMismatch(f"{x.group.label} vs {G.label}")

    @property
    def group(self) -> FiniteGroup:
        return self.images[0].group

    @property
    def field(self) -> FieldSpec:
        return self.images[0].field

    def to_vector(self) -> List[Scalar]:
        return [x for img in self.images for x in img.coeffs]

    @classmethod
    def from_vector(cls, G: FiniteGroup, F: FieldSpec, v: Sequence[Scalar]) -> "GeneratorAssignment":
        N = G.order
        return cls(tuple(AlgebraElement(G, F, tuple(v[i * N:(i + 1) * N])) for i in range(len(G.generators))))

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.images) + ")"


@dataclass
class FailureReport:
    """Relators whose word derivative does not vanish, with the offending values."""

    violations: List[Tuple[GroupWord, AlgebraElement]] = field(default_factory=list)

    def __bool__(self):
        return False

    def describe(self) -> str:
        return "; ".join(f"f~({w}) = {v}" for w, v in self.violations)


# -- basic operations -------------------------------------------------------

def leibniz_check(D: DerivationMatrix) -> bool:
    """``d(gh) = d(g) h + g d(h)`` for all ordered pairs of group elements."""
    G, F = D.group, D.field
    N = G.order
    table, inv = G.cayley, G.inverse
    cols = D.columns
    add = F.add
    for g in range(N):
        dg = cols[g]
        gi = inv[g]
        for h in range(N):
            dgh = cols[table[g][h]]
            dh = cols[h]
            hi = inv[h]
            for k in range(N):
                # (d(g) h)[k] = d(g)[k h^-1],  (g d(h))[k] = d(h)[g^-1 k]
                if dgh[k] != add(dg[table[k][hi]], dh[table[gi][k]]):
                    return False
    return True


def _leibniz_rows(G: FiniteGroup):
    N = G.order
    table, inv = G.cayley, G.inverse
    pairs = [(G.identity, G.identity)] + [(g, x) for g in range(N) for x in G.generators]
    for g, x in pairs:
        gx, xi, gi = table[g][x], inv[x], inv[g]
        for h in range(N):
            row = {}
            for col, c in ((gx * N + h, 1), (g * N + table[h][xi], -1), (x * N + table[gi][h], -1)):
                row[col] = row.get(col, 0) + c
            yield {c: v for c, v in row.items() if v}


def _depth_order(G: FiniteGroup) -> List[int]:
    # unknowns of elements far from the identity are pivoted first, so tree
    # constraints rewrite them in terms of generator columns
    N = G.order
    depth = [len(G.normal_words[g]) if G.normal_words else 0 for g in range(N)]
    elems = sorted(range(N), key=lambda g: (-depth[g], g))
    return [g * N + h for g in elems for h in range(N)]


def derivation_space(G: FiniteGroup, F: FieldSpec) -> SubspaceBasis:
    """All F-linear derivations of FG, as flattened matrices (ambient N^2).

    Constraints are imposed only for right factors drawn from the generators;
    every basis vector is then checked against the full Leibniz rule.
    """
    N = G.order
    space = nullspace(F, _leibniz_rows(G), N * N, _depth_order(G))
    for v in space.rows:
        if not leibniz_check(DerivationMatrix.from_flat(G, F, v)):
            raise AssertionError(f"{G.label}: generator-restricted Leibniz system admitted a non-derivation")
    return space


def inner_derivation(beta: AlgebraElement) -> DerivationMatrix:
    """``alpha -> alpha*beta - beta*alpha``."""
    cols = tuple((beta.left(g) - beta.right(g)).coeffs for g in range(beta.group.order))
    return DerivationMatrix(beta.group, beta.field, cols)


def inner_derivation_space(G: FiniteGroup, F: FieldSpec) -> Tuple[SubspaceBasis, List[int]]:
    """Span of all ``d_g`` together with the witness set
    ``{g in C_i - {x_i} : |C_i| >= 2}`` built from the stored class representatives."""
    N = G.order
    vecs = [inner_derivation(AlgebraElement.basis(G, F, g)).flatten() for g in range(N)]
    space = SubspaceBasis.span(F, N * N, vecs)
    cc = conjugacy_classes(G)
    witnesses = sorted(g for c, rep in zip(cc.classes, cc.representatives) if len(c) > 1
                       for g in c if g != rep)
    return space, witnesses


# -- word derivatives -------------------------------------------------------

def _letter_terms(G: FiniteGroup, w: GroupWord):
    """Yield ``(left, generator index, sign, right)`` so that the word
    derivative is ``sum(sign * left * f(x_gen) * right)``."""
    prefixes = [G.identity]
    for gen, e in w.letters:
        x = G.generators[gen]
        prefixes.append(G.mul(prefixes[-1], x if e == 1 else G.inv(x)))
    total = prefixes[-1]
    for i, (gen, e) in enumerate(w.letters):
        p, suffix = prefixes[i], G.mul(G.inv(prefixes[i + 1]), total)
        if e == 1:
            yield p, gen, 1, suffix
        else:
            # f~(x^-1) = -x^-1 f(x) x^-1
            xi = G.inv(G.generators[gen])
            yield G.mul(p, xi), gen, -1, G.mul(xi, suffix)


def word_derivative(f: GeneratorAssignment, w: GroupWord) -> AlgebraElement:
    G, F = f.group, f.field
    out = AlgebraElement.zero(G, F)
    for left, gen, sign, right in _letter_terms(G, w):
        term = f.images[gen].left(left).right(right)
        out = out + term if sign == 1 else out - term
    return out


def word_derivative_rows(G: FiniteGroup, F: FieldSpec, w: GroupWord) -> List[dict]:
    """The linear map ``f -> f~(w)`` as N sparse rows over the k*N assignment
    coordinates (f(a) coefficients first, then f(b), ...)."""
    N = G.order
    table = G.cayley
    rows = [dict() for _ in range(N)]
    for left, gen, sign, right in _letter_terms(G, w):
        lrow = table[left]
        for h in range(N):
            out = table[lrow[h]][right]
            col = gen * N + h
            rows[out][col] = rows[out].get(col, 0) + sign
    return [{c: v for c, v in r.items() if F(v)} for r in rows]


def generator_derivation_space(G: FiniteGroup, F: FieldSpec) -> SubspaceBasis:
    """Assignments ``(f(x_1), ..., f(x_k))`` whose word derivative kills every
    relator; ambient dimension ``k*N``."""
    if not G.relators:
        raise NoRelators(f"{G.label} carries no presentation")
    N, k = G.order, len(G.generators)
    rows = [r for y in G.relators for r in word_derivative_rows(G, F, y)]
    return nullspace(F, rows, k * N)


def extend_generator_map(f: GeneratorAssignment) -> Union[DerivationMatrix, FailureReport]:
    """The unique derivation with the given generator images, or the list of
    relators whose word derivative does not vanish."""
    G = f.group
    if not G.relators:
        raise NoRelators(f"{G.label} carries no presentation")
    failures = [(y, v) for y in G.relators for v in [word_derivative(f, y)] if v]
    if failures:
        return FailureReport(failures)
    return DerivationMatrix.from_images([word_derivative(f, G.word_for(g)) for g in range(G.order)])


def lift_generator_space(G: FiniteGroup, F: FieldSpec, space: SubspaceBasis) -> SubspaceBasis:
    """Image of a space of assignments under :func:`extend_generator_map`."""
    vecs = []
    for v in space.rows:
        D = extend_generator_map(GeneratorAssignment.from_vector(G, F, v))
        if isinstance(D, FailureReport):
            raise AssertionError(f"assignment in the relator nullspace failed: {D.describe()}")
        vecs.append(D.flatten())
    return SubspaceBasis.span(F, G.order ** 2, vecs)


def innerness_witness(D: DerivationMatrix) -> Optional[AlgebraElement]:
    """Some ``beta`` with ``d_beta = D``, or None when ``D`` is outer.

    The returned witness is the solution with every free coordinate zero;
    any two witnesses differ by a central element.
    """
    if not leibniz_check(D):
        raise NotADerivation("matrix fails the Leibniz rule")
    G, F = D.group, D.field
    N = G.order
    table, inv = G.cayley, G.inverse
    rows, rhs = [], []
    # a derivation is fixed by its generator images, so generator columns suffice
    for g in G.generators or (G.identity,):
        gi = inv[g]
        for h in range(N):
            # (g beta - beta g)[h] = beta[g^-1 h] - beta[h g^-1]
            u, v = table[gi][h], table[h][gi]
            rows.append({u: 1, v: -1} if u != v else {})
            rhs.append(D.columns[g][h])
    beta = solve(F, rows, rhs, N)
    if beta is None:
        return None
    return AlgebraElement(G, F, tuple(beta))


def is_inner(D: DerivationMatrix) -> bool:
    return innerness_witness(D) is not None


def center_kernel_check(beta: AlgebraElement, other: AlgebraElement) -> bool:
    """True when ``beta - other`` is central (the kernel of ``beta -> d_beta``)."""
    diff = beta - other
    return all(diff.left(g) == diff.right(g) for g in beta.group.generators)


__all__ = [
    "DerivationMatrix", "GeneratorAssignment", "FailureReport", "leibniz_check",
    "derivation_space", "inner_derivation", "inner_derivation_space", "word_derivative",
    "word_derivative_rows", "generator_derivation_space", "extend_generator_map",
    "lift_generator_space", "innerness_witness", "is_inner",
]
