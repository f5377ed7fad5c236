"""Closed-form data for the dihedral, dicyclic and semi-dihedral families.

Derivation bases are generated from templates ``(image of a, image of b)``
applied to antisymmetric pieces ``w = a^e - a^e'``.  Each template is first
tried exactly as published; if it does not extend to a derivation, the
corrected variants listed with the template are tried in order and the one
that verified is recorded in ``notes``.  Nothing is corrected silently.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .algebra import AlgebraElement
from .derivations import FailureReport, GeneratorAssignment, extend_generator_map
from .errors import CharTwoUnsupported, ParameterTooSmall, UnsupportedTag
from .fields import FieldSpec
from .groups import FiniteGroup, family_group

REGULAR = "REGULAR"
MODULAR = "MODULAR"
FAMILY_NAMES = ("dihedral", "dicyclic", "semidihedral")
MIN_N = {"dihedral": 3, "dicyclic": 2, "semidihedral": 1}


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    field: FieldSpec

    def __post_init__(self):
        if self.family not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.field.characteristic == 2:
            raise CharTwoUnsupported("the family results need characteristic 0 or an odd prime")

    @property
    def regime(self) -> str:
        return regime(self.field, self.n)

    def to_json(self) -> dict:
        return {"family": self.family, "n": self.n,
                "characteristic": self.field.characteristic, "regime": self.regime}


def regime(F: FieldSpec, n: int) -> str:
    p = F.characteristic
    return REGULAR if p == 0 or gcd(n, p) == 1 else MODULAR


def _require_odd(F: FieldSpec):
    if F.characteristic == 2:
        raise CharTwoUnsupported("family bases need characteristic 0 or an odd prime")


# -- closed-form counts -------------------------------------------------------

def expected_der_dim(family: str, n: int, F: FieldSpec) -> int:
    k = 4 if regime(F, n) == MODULAR else 3
    if family == "dihedral":
        return k * ((n - 1) // 2)
    if family == "dicyclic":
        return k * (n - 1)
    return k * (n - 1) + 2 * k * (n // 2)


def expected_class_count(family: str, n: int) -> int:
    if family == "dihedral":
        return n // 2 + 3 if n % 2 == 0 else (n + 3) // 2
    if family == "dicyclic":
        return n + 3
    return 2 * n + 3 if n % 2 == 0 else 2 * n + 6


def group_order(family: str, n: int) -> int:
    return {"dihedral": 2 * n, "dicyclic": 4 * n, "semidihedral": 8 * n}[family]


def expected_inner_dim(family: str, n: int) -> int:
    if family == "dihedral":
        return 3 * ((n - 1) // 2)
    if family == "dicyclic":
        return 3 * (n - 1)
    return 3 * (2 * n - 1) if n % 2 == 0 else 6 * (n - 1)


def expected_anticentralizer_dim(family: str, n: int) -> int:
    if family == "dihedral":
        return 2 * ((n - 1) // 2)
    if family == "dicyclic":
        return 2 * (n - 1)
    return 2 * (n - 1) + 4 * (n // 2)


def expected_classes(G: FiniteGroup) -> List[Tuple[int, ...]]:
    """Conjugacy classes as listed in closed form for each family."""
    n, e = G.n, G.elem
    if G.family == "dihedral":
        cls = [[0]] + [[e(k), e(-k)] for k in range(1, (n - 1) // 2 + 1)]
        if n % 2 == 0:
            cls += [[e(n // 2)], [e(2 * i, 1) for i in range(n // 2)], [e(2 * i + 1, 1) for i in range(n // 2)]]
        else:
            cls += [[e(i, 1) for i in range(n)]]
    elif G.family == "dicyclic":
        cls = [[0], [e(n)]] + [[e(i), e(-i)] for i in range(1, n)]
        cls += [[e(2 * i, 1) for i in range(n)], [e(2 * i + 1, 1) for i in range(n)]]
    else:
        cls = [[0], [e(2 * n)]] + [[e(2 * k), e(-2 * k)] for k in range(1, n)]
        if n % 2 == 0:
            cls += [[e(2 * k + 1), e(2 * n - (2 * k + 1))] for k in range(-n // 2, n // 2)]
            cls += [[e(2 * k, 1) for k in range(1, 2 * n + 1)], [e(2 * k - 1, 1) for k in range(1, 2 * n + 1)]]
        else:
            cls += [[e(n)], [e(3 * n)]]
            cls += [[e(2 * k + 1), e(2 * n - (2 * k + 1))] for k in range(-(n - 1) // 2, (n - 1) // 2)]
            cls += [[e(4 * k + r, 1) for k in range(1, n + 1)] for r in range(4)]
    return sorted(tuple(sorted(set(c))) for c in cls)


# -- template machinery ----------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """``sign * a^shift * w * b^b`` for the current antisymmetric piece ``w``."""

    shift: int = 0
    b: int = 0
    sign: int = 1

    def build(self, G: FiniteGroup, F: FieldSpec, w) -> AlgebraElement:
        return AlgebraElement.from_terms(
            G, F, [(self.sign * c, G.elem(x + self.shift, self.b)) for c, x in w])

    def negated(self) -> "Piece":
        return Piece(self.shift, self.b, -self.sign)

    def stripped(self) -> "Piece":
        return Piece(self.shift, 0, self.sign)

    def render(self, w: str = "w") -> str:
        a = {0: "", 1: "a"}.get(self.shift, f"a^{self.shift}")
        body = f"{a}({w}){'b' if self.b else ''}" if a else f"({w}){'b' if self.b else ''}"
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True)
class Template:
    first: Optional[Piece]
    second: Optional[Piece]
    variants: Tuple[Tuple[str, Optional[Piece], Optional[Piece]], ...] = ()

    def render(self, w: str = "w") -> str:
        r = lambda p: "0" if p is None else p.render(w)
        return f"({r(self.first)}, {r(self.second)})"

    def build(self, G, F, w, use=None) -> GeneratorAssignment:
        first, second = (self.first, self.second) if use is None else use
        zero = AlgebraElement.zero(G, F)
        return GeneratorAssignment((zero if first is None else first.build(G, F, w),
                                    zero if second is None else second.build(G, F, w)))


def _with_variants(first: Piece, second: Piece, strip_b: bool = False) -> Template:
    variants = []
    if strip_b:
        variants.append(("b-stripped second coordinate", first, second.stripped()))
    variants.append(("first coordinate negated", first.negated(), second))
    if strip_b:
        variants.append(("first coordinate negated, b-stripped second coordinate",
                         first.negated(), second.stripped()))
    return Template(first, second, tuple(variants))


def _emit(G, F, templates, pieces, label, notes) -> List[GeneratorAssignment]:
    out = []
    for tmpl in templates:
        used = {}
        for tag, w in pieces:
            f = tmpl.build(G, F, w)
            if isinstance(extend_generator_map(f), FailureReport):
                for name, first, second in tmpl.variants:
                    g = tmpl.build(G, F, w, use=(first, second))
                    if not isinstance(extend_generator_map(g), FailureReport):
                        f = g
                        used.setdefault(name, []).append(tag)
                        break
                else:
                    used.setdefault("printed form kept (no variant verified)", []).append(tag)
            out.append(f)
        if notes is not None:
            for name, tags in used.items():
                notes.append(f"{label} template {tmpl.render()}: printed form does not extend "
                             f"for {', '.join(tags)}; {name}")
    return out


def _sym(x: int, y: int):
    return [(1, x), (-1, y)]


def dihedral_basis(n: int, F: FieldSpec, notes: Optional[list] = None) -> List[GeneratorAssignment]:
    _require_odd(F)
    G = family_group("dihedral", n)
    pieces = [(f"i={i}", _sym(i, -i)) for i in range(1, (n - 1) // 2 + 1)]
    if regime(F, n) == REGULAR:
        templates = [Template(Piece(b=1), None),
                     _with_variants(Piece(1, 1), Piece()),
                     Template(None, Piece(b=1))]
    else:
        templates = [Template(Piece(1), None),
                     Template(Piece(1), Piece(b=1)),
                     Template(Piece(b=1), None),
                     _with_variants(Piece(1, 1), Piece())]
    return _emit(G, F, templates, pieces, f"dihedral {regime(F, n)}", notes)


def dicyclic_basis(n: int, F: FieldSpec, notes: Optional[list] = None) -> List[GeneratorAssignment]:
    _require_odd(F)
    G = family_group("dicyclic", n)
    pieces = [(f"i={i}", _sym(i, -i)) for i in range(1, n)]
    if regime(F, n) == REGULAR:
        templates = [Template(Piece(n, 1), None),
                     _with_variants(Piece(n + 1, 1), Piece()),
                     Template(None, Piece(b=1))]
    else:
        templates = [Template(Piece(n + 1), None),
                     Template(Piece(1), Piece(b=1)),
                     Template(Piece(n, 1), None),
                     _with_variants(Piece(n + 1, 1), Piece())]
    return _emit(G, F, templates, pieces, f"dicyclic {regime(F, n)}", notes)


def _sd_pieces(n: int):
    even = [(f"s={s}", _sym(2 * s, -2 * s)) for s in range(1, n)]
    odd = [(f"t={t}", _sym(2 * t + 1, 2 * n - (2 * t + 1))) for t in range(-(n // 2), n // 2)]
    return even, odd


def semidihedral_basis(n: int, F: FieldSpec, notes: Optional[list] = None) -> List[GeneratorAssignment]:
    _require_odd(F)
    G = family_group("semidihedral", n)
    even, odd = _sd_pieces(n)
    label = f"semidihedral {regime(F, n)}"
    out = []
    if regime(F, n) == REGULAR:
        # interleaved as published: s-type then t-type for each template shape
        shapes = [
            (Template(Piece(b=1), None), Template(Piece(b=1), None)),
            (_with_variants(Piece(1, 1), Piece()), _with_variants(Piece(1, 1), Piece(b=1), strip_b=True)),
            (Template(None, Piece(b=1)), Template(None, Piece(b=1))),
        ]
    else:
        shapes = [
            (Template(Piece(1), None), Template(Piece(1), None)),
            (Template(Piece(1), Piece(b=1)), Template(Piece(1), Piece(b=1))),
            (Template(Piece(b=1), None), Template(Piece(b=1), None)),
            (_with_variants(Piece(1, 1), Piece()), _with_variants(Piece(1, 1), Piece())),
        ]
    for t_even, t_odd in shapes:
        out += _emit(G, F, [t_even], even, label + " (even powers)", notes)
        out += _emit(G, F, [t_odd], odd, label + " (odd powers)", notes)
    return out


BASIS_BUILDERS = {"dihedral": dihedral_basis, "dicyclic": dicyclic_basis,
                  "semidihedral": semidihedral_basis}


def family_basis(family: str, n: int, F: FieldSpec, notes: Optional[list] = None) -> List[GeneratorAssignment]:
    return BASIS_BUILDERS[family](n, F, notes)


# -- inner derivation witnesses ------------------------------------------------------

def family_inner_basis(family: str, n: int, F: Optional[FieldSpec] = None) -> List[int]:
    """Elements ``g`` whose inner derivations ``d_g`` form the published basis.

    The field plays no role (the statement holds in every characteristic);
    it is accepted for symmetry with the other builders.
    """
    if n < MIN_N.get(family, 1):
        raise ParameterTooSmall(f"{family} needs n >= {MIN_N[family]}")
    G = family_group(family, n)
    e = G.elem
    if family == "dihedral":
        if n % 2 == 0:
            g = [x for i in range(1, n // 2) for x in (e(i), e(2 * i, 1), e(2 * i + 1, 1))]
        else:
            g = [e(i) for i in range(1, (n - 1) // 2 + 1)] + [e(i, 1) for i in range(1, n)]
    elif family == "dicyclic":
        g = [x for i in range(1, n) for x in (e(i), e(2 * i, 1), e(2 * i + 1, 1))]
    else:
        g = [e(2 * k) for k in range(1, n)]
        if n % 2 == 0:
            g += [e(2 * k + 1) for k in range(-n // 2, n // 2)]
            g += [x for k in range(1, 2 * n) for x in (e(2 * k, 1), e(2 * k - 1, 1))]
        else:
            g += [e(2 * k + 1) for k in range(-(n - 1) // 2, (n - 1) // 2)]
            g += [e(4 * k + r, 1) for k in range(1, n) for r in range(4)]
    return g


# -- anti-centralizers ----------------------------------------------------------------

def anticentralizer_tags(family: str, n: int) -> List[str]:
    return ["b", "a^{n+1}b"] if family == "dicyclic" else ["b", "ab"]


def tag_element(G: FiniteGroup, tag: str) -> int:
    n = G.n
    aliases = {"b": G.elem(0, 1), "ab": G.elem(1, 1)}
    if G.family == "dicyclic":
        aliases = {"b": G.elem(0, 1), "a^{n+1}b": G.elem(n + 1, 1), G.names[G.elem(n + 1, 1)]: G.elem(n + 1, 1)}
    if tag not in aliases:
        raise UnsupportedTag(f"{tag!r} is not a published anti-centralizer for {G.family}")
    return aliases[tag]


def family_anticentralizer_basis(family: str, n: int, F: FieldSpec, which: str) -> List[AlgebraElement]:
    _require_odd(F)
    G = family_group(family, n)
    tag_element(G, which)
    if family == "dihedral":
        pieces = [_sym(i, -i) for i in range(1, (n - 1) // 2 + 1)]
        twist = 0 if which == "b" else 1
    elif family == "dicyclic":
        pieces = [_sym(i, -i) for i in range(1, n)]
        twist = 0 if which == "b" else n + 1
    else:
        even, odd = _sd_pieces(n)
        pieces = [w for _, w in even] + [w for _, w in odd]
        twist = 0 if which == "b" else 1
    out = []
    for w in pieces:
        out.append(Piece().build(G, F, w))
        out.append(Piece(twist, 1).build(G, F, w))
    return out
