"""Exact ground fields: the rationals and prime fields F_p.

Every scalar in the engine is either a `fractions.Fraction` (over Q) or an
int reduced mod p (over F_p).  No floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Field:
    """Descriptor for the ground field: Q when p is None, else F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime-field"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def zero(self):
        return Fraction(0) if self.p is None else 0

    def one(self):
        return Fraction(1) if self.p is None else 1

    def from_int(self, n: int):
        return Fraction(n) if self.p is None else n % self.p

    def from_fraction(self, q: Fraction):
        if self.p is None:
            return q
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes mod {self.p}")
        return (q.numerator * pow(den, self.p - 2, self.p)) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a == 0 if self.p is None else a % self.p == 0

    def __str__(self):
        return "Q" if self.p is None else f"F{self.p}"


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


def parse_field(text: str) -> Field:
    """Parse a field label such as "Q", "F2" or "F101"."""
    t = text.strip()
    if t in ("Q", "QQ", "rationals"):
        return QQ
    if t.startswith("F"):
        return Field(int(t[1:]))
    raise ValueError(f"unknown field {text!r}")


def format_scalar(x) -> str:
    """Serialize a scalar as a "num/den" string (F_p elements as plain ints)."""
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


def parse_scalar(text: str, field: Field):
    """Parse a "num/den" or integer string into a field element."""
    if "/" in text:
        num, den = text.split("/")
        return field.from_fraction(Fraction(int(num), int(den)))
    return field.from_int(int(text))
