"""Finite groups given by Cayley tables, with presentations and conjugacy data.

Family constructors (:func:`dihedral`, :func:`dicyclic`, :func:`semidihedral`)
index the element ``a^i b^j`` as ``i + m*j`` where ``m`` is the order of ``a``,
so coefficient vectors read directly against bases written in ``a^i b^j`` form.
"""
from __future__ import annotations

import random
from collections import deque
from functools import lru_cache
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .errors import NotAGroup, ParameterTooSmall, RelatorViolation

FULL_ASSOCIATIVITY_LIMIT = 64


class NotGenerating(NotAGroup):
    def __init__(self, reached):
        super().__init__("generation", reached,
                         f"generators only reach {len(reached)} elements")


@dataclass(frozen=True)
class GroupWord:
    """A free-group word: ``letters`` holds ``(generator index, +1 | -1)`` pairs."""

    letters: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        for gen, e in self.letters:
            if gen < 0 or e not in (1, -1):
                raise ValueError(f"bad letter ({gen}, {e})")

    @classmethod
    def parse(cls, text: str) -> "GroupWord":
        """Parse ``"aaBab"`` style words; an uppercase letter is an inverse.

        ``a`` is generator 0, ``b`` generator 1 and so on.  ``"1"`` or the
        empty string is the empty word.  A letter may carry an integer
        exponent, e.g. ``"a^4b"``.
        """
        letters = []
        s = text.replace(" ", "").replace("*", "")
        i = 0
        while i < len(s):
            ch = s[i]
            i += 1
            if ch == "1" and not letters and i == len(s):
                break
            if not ch.isalpha():
                raise ValueError(f"unexpected {ch!r} in word {text!r}")
            gen = ord(ch.lower()) - ord("a")
            sign = -1 if ch.isupper() else 1
            k = 1
            if i < len(s) and s[i] == "^":
                j = i + 1
                if j < len(s) and s[j] == "-":
                    j += 1
                while j < len(s) and s[j].isdigit():
                    j += 1
                k = int(s[i + 1:j])
                i = j
            if k < 0:
                sign, k = -sign, -k
            letters.extend([(gen, sign)] * k)
        return cls(tuple(letters))

    @classmethod
    def power(cls, gen: int, k: int) -> "GroupWord":
        return cls(((gen, 1 if k > 0 else -1),) * abs(k))

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return "".join(chr(ord("a") + g) if e == 1 else chr(ord("A") + g) for g, e in self.letters)


@dataclass(frozen=True)
class FiniteGroup:
    cayley: Tuple[Tuple[int, ...], ...]
    inverse: Tuple[int, ...]
    identity: int
    generators: Tuple[int, ...]
    relators: Tuple[GroupWord, ...]
    names: Tuple[str, ...]
    label: str = "G"
    family: Optional[str] = None
    n: Optional[int] = None
    cyclic_order: Optional[int] = None
    degenerate: bool = False
    normal_words: Tuple[GroupWord, ...] = field(default=(), compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self):
        return len(self.cayley)

    def mul(self, x: int, y: int) -> int:
        return self.cayley[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.cayley[self.cayley[g][x]][self.inverse[g]]

    def pow(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = self.identity
        for _ in range(k):
            out = self.cayley[out][x]
        return out

    def elem(self, i: int, j: int = 0) -> int:
        """Index of ``a^i b^j`` in a family group (``i`` taken modulo ``ord(a)``)."""
        if self.cyclic_order is None:
            raise ValueError(f"{self.label} is not a family group")
        return i % self.cyclic_order + self.cyclic_order * j

    def index(self, name: str) -> int:
        return self.names.index(name)

    def is_abelian(self) -> bool:
        return all(self.cayley[x][y] == self.cayley[y][x]
                   for x in range(self.order) for y in range(x))

    def word_for(self, x: int) -> GroupWord:
        return self.normal_words[x]


def evaluate_word(G: FiniteGroup, w: GroupWord) -> int:
    out = G.identity
    for gen, e in w.letters:
        if gen >= len(G.generators):
            raise ValueError(f"word {w} uses generator {gen}; {G.label} has {len(G.generators)}")
        x = G.generators[gen]
        out = G.cayley[out][x if e == 1 else G.inverse[x]]
    return out


# -- family constructors ----------------------------------------------------

def _power_name(i: int, j: int) -> str:
    a = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    b = "b" if j else ""
    return (a + b) or "1"


def _metacyclic(m: int, twist, b_square: int, relators, label, family, n, degenerate=False):
    # elements a^i b^j, j in {0,1}; b a^k = a^twist(k) b and b^2 = a^b_square
    N = 2 * m
    table = []
    for x in range(N):
        i, j = x % m, x // m
        row = []
        for y in range(N):
            k, l = y % m, y // m
            e = i + (twist(k) if j else k)
            if j and l:
                row.append((e + b_square) % m)
            else:
                row.append(e % m + m * (j + l))
        table.append(tuple(row))
    inverse = tuple(next(y for y in range(N) if table[x][y] == 0) for x in range(N))
    names = tuple(_power_name(x % m, x // m) for x in range(N))
    words = tuple(GroupWord.power(0, x % m) * GroupWord.power(1, x // m) for x in range(N))
    G = FiniteGroup(tuple(table), inverse, 0, (1, m), tuple(relators), names,
                    label=label, family=family, n=n, cyclic_order=m,
                    degenerate=degenerate, normal_words=words)
    for r in G.relators:
        if evaluate_word(G, r) != G.identity:
            raise RelatorViolation(f"{label}: relator {r} is not trivial")
    return G


def dihedral(n: int) -> FiniteGroup:
    """D_2n = <a, b | a^n, b^2, (ab)^2>, order 2n, for n >= 3."""
    if n < 3:
        raise ParameterTooSmall(f"dihedral groups need n >= 3, got {n}")
    rel = [GroupWord.power(0, n), GroupWord.parse("bb"), GroupWord.parse("abab")]
    return _metacyclic(n, lambda k: -k, 0, rel, f"D_{2 * n}", "dihedral", n)


def dicyclic(n: int, allow_degenerate: bool = False) -> FiniteGroup:
    """T_4n = <a, b | a^2n, a^n b^2, a b^-1 a b>, order 4n.

    n = 1 (the cyclic group of order 4) needs ``allow_degenerate``.
    """
    if n < 1 or (n < 2 and not allow_degenerate):
        raise ParameterTooSmall(f"dicyclic groups need n >= 2, got {n}")
    rel = [GroupWord.power(0, 2 * n), GroupWord.power(0, n) * GroupWord.parse("bb"),
           GroupWord.parse("aBab")]
    return _metacyclic(2 * n, lambda k: -k, n, rel, f"T_{4 * n}", "dicyclic", n,
                       degenerate=n < 2)


def semidihedral(n: int) -> FiniteGroup:
    """SD_8n = <a, b | a^4n, b^2, a^(2n+1) b a b>, order 8n.

    n = 1 gives the abelian group C4 x C2; it is accepted and marked degenerate.
    """
    if n < 1:
        raise ParameterTooSmall(f"semidihedral groups need n >= 1, got {n}")
    m = 4 * n
    rel = [GroupWord.power(0, m), GroupWord.parse("bb"),
           GroupWord.power(0, 2 * n + 1) * GroupWord.parse("bab")]
    return _metacyclic(m, lambda k: (2 * n - 1) * k, 0, rel, f"SD_{8 * n}", "semidihedral", n,
                       degenerate=n == 1)


FAMILIES = {"dihedral": dihedral, "dicyclic": dicyclic, "semidihedral": semidihedral}


@lru_cache(maxsize=None)
def family_group(family: str, n: int, allow_degenerate: bool = False) -> FiniteGroup:
    # groups are immutable, so one instance per (family, n) is shared
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}")
    if family == "dicyclic":
        return dicyclic(n, allow_degenerate)
    return FAMILIES[family](n)


# -- generic groups ---------------------------------------------------------

def _check_associative(table, N, seed=0):
    if N <= FULL_ASSOCIATIVITY_LIMIT:
        triples = ((x, y, z) for x in range(N) for y in range(N) for z in range(N))
    else:
        rng = random.Random(seed)
        triples = ((rng.randrange(N), rng.randrange(N), rng.randrange(N)) for _ in range(10 * N * N))
    for x, y, z in triples:
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise NotAGroup("associativity", (x, y, z))


def _bfs_words(table, identity, generators):
    words = {identity: GroupWord()}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(generators):
            y = table[x][g]
            if y not in words:
                words[y] = words[x] * GroupWord(((gi, 1),))
                queue.append(y)
    return words


def _default_generators(table, identity, N):
    gens = []
    reached = {identity}
    for x in range(N):
        if x not in reached:
            gens.append(x)
            reached = set(_bfs_words(table, identity, gens))
    return gens


def from_cayley(table: Sequence[Sequence[int]], generators: Optional[Sequence[int]] = None,
                relators: Sequence[GroupWord] = (), names: Optional[Sequence[str]] = None,
                label: str = "G") -> FiniteGroup:
    """Validate a Cayley table and wrap it as a :class:`FiniteGroup`.

    Identity and inverses are derived from the table.  When ``generators`` is
    omitted a small generating set is picked greedily.
    """
    N = len(table)
    if N == 0:
        raise NotAGroup("nonempty", None, "empty table")
    rows = []
    for x, row in enumerate(table):
        if len(row) != N:
            raise NotAGroup("shape", x, f"row {x} has {len(row)} entries, expected {N}")
        for y, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < N:
                raise NotAGroup("closure", (x, y), f"entry ({x},{y}) = {v!r} is not in 0..{N - 1}")
        rows.append(tuple(row))
    table = tuple(rows)

    identity = next((e for e in range(N)
                     if all(table[e][x] == x and table[x][e] == x for x in range(N))), None)
    if identity is None:
        raise NotAGroup("identity", None, "no two-sided identity element")
    inverse = []
    for x in range(N):
        y = next((y for y in range(N) if table[x][y] == identity and table[y][x] == identity), None)
        if y is None:
            raise NotAGroup("inverse", x, f"element {x} has no inverse")
        inverse.append(y)
    _check_associative(table, N)

    if generators is None:
        generators = _default_generators(table, identity, N)
    generators = tuple(generators)
    for g in generators:
        if not 0 <= g < N:
            raise ValueError(f"generator {g} is not an element index")
    words = _bfs_words(table, identity, generators)
    if len(words) != N:
        raise NotGenerating(sorted(words))

    if names is None:
        names = [str(x) for x in range(N)]
    G = FiniteGroup(table, tuple(inverse), identity, generators, tuple(relators), tuple(names),
                    label=label, normal_words=tuple(words[x] for x in range(N)))
    for r in G.relators:
        if evaluate_word(G, r) != identity:
            raise RelatorViolation(f"relator {r} evaluates to {evaluate_word(G, r)}, not the identity")
    return G


# -- conjugacy --------------------------------------------------------------

@dataclass(frozen=True)
class ConjugacyClasses:
    classes: Tuple[Tuple[int, ...], ...]
    representatives: Tuple[int, ...]
    central_count: int

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def sizes(self) -> List[int]:
        return [len(c) for c in self.classes]

    def class_of(self, x: int) -> int:
        return next(i for i, c in enumerate(self.classes) if x in c)


def conjugacy_classes(G: FiniteGroup) -> ConjugacyClasses:
    """Orbits under conjugation by the generators; singleton classes first."""
    seen = [False] * G.order
    found = []
    for x in range(G.order):
        if seen[x]:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for g in G.generators:
                z = G.conj(g, y)
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        for y in orbit:
            seen[y] = True
        found.append(tuple(sorted(orbit)))
    found.sort(key=lambda c: (len(c) > 1, c[0]))
    return ConjugacyClasses(tuple(found), tuple(c[0] for c in found),
                            sum(1 for c in found if len(c) == 1))


def cyclic_part(G: FiniteGroup, g: int) -> List[int]:
    """The cyclic subgroup generated by ``g``."""
    out = {G.identity}
    x = g
    while x not in out:
        out.add(x)
        x = G.mul(x, g)
    return sorted(out)
