"""Exact coefficient fields: the rationals and prime fields GF(p).

Rationals are :class:`fractions.Fraction` values (always in lowest terms with a
positive denominator); GF(p) elements are plain ``int`` residues in ``[0, p)``.
A :class:`FieldSpec` knows how to coerce, combine and render its scalars.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import CompositeCharacteristic, DivisionByZero

Scalar = Union[Fraction, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int

    def __post_init__(self):
        c = self.characteristic
        if not isinstance(c, int) or isinstance(c, bool):
            raise TypeError(f"characteristic must be an int, got {c!r}")
        if c != 0 and not is_prime(c):
            raise CompositeCharacteristic(f"characteristic {c} is neither 0 nor prime")

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def name(self) -> str:
        return "Q" if self.is_rational else f"GF({self.characteristic})"

    def __str__(self):
        return self.name

    # -- construction -----------------------------------------------------

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or ``"p/q"`` string into this field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        p = self.characteristic
        if p == 0:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"{value} has no image in GF({p})")
            return value.numerator * pow(value.denominator, -1, p) % p
        return int(value) % p

    @property
    def zero(self) -> Scalar:
        return Fraction(0) if self.is_rational else 0

    @property
    def one(self) -> Scalar:
        return Fraction(1) if self.is_rational else 1

    def elements(self):
        """All elements of a prime field (finite fields only)."""
        if self.is_rational:
            raise ValueError("the rationals are infinite")
        return range(self.characteristic)

    # -- arithmetic -------------------------------------------------------

    def add(self, x: Scalar, y: Scalar) -> Scalar:
        p = self.characteristic
        return (x + y) % p if p else x + y

    def sub(self, x: Scalar, y: Scalar) -> Scalar:
        p = self.characteristic
        return (x - y) % p if p else x - y

    def neg(self, x: Scalar) -> Scalar:
        p = self.characteristic
        return -x % p if p else -x

    def mul(self, x: Scalar, y: Scalar) -> Scalar:
        p = self.characteristic
        return x * y % p if p else x * y

    def submul(self, t: Scalar, f: Scalar, v: Scalar) -> Scalar:
        """``t - f*v``; the inner step of every row operation."""
        p = self.characteristic
        return (t - f * v) % p if p else t - f * v

    def inv(self, x: Scalar) -> Scalar:
        if not x:
            raise DivisionByZero("inverse of zero")
        p = self.characteristic
        return pow(x, -1, p) if p else 1 / Fraction(x)

    def div(self, x: Scalar, y: Scalar) -> Scalar:
        return self.mul(x, self.inv(y))

    def power(self, x: Scalar, k: int) -> Scalar:
        p = self.characteristic
        if k < 0:
            return self.power(self.inv(x), -k)
        return pow(x, k, p) if p else x**k

    # -- rendering --------------------------------------------------------

    def to_json(self, x: Scalar):
        """Rationals become ``"p/q"`` strings, GF(p) residues stay ints."""
        return str(Fraction(x)) if self.is_rational else int(x)

    def from_json(self, raw) -> Scalar:
        if isinstance(raw, (float, bool)):
            raise TypeError("floating-point coefficients are not accepted")
        return self(raw)


def make_field(characteristic: int) -> FieldSpec:
    return FieldSpec(characteristic)


def scalar_inverse(F: FieldSpec, x: Scalar) -> Scalar:
    return F.inv(x)


QQ = FieldSpec(0)
