"""
2x2 matrices over Z/m.

Mat2 values are immutable and always reduced. Besides ring arithmetic the
module provides the invariants the classification needs: scalar depth mu,
Smith exponents over Z/p^n, CRT splitting over the prime powers of m, and
exact multiplicative orders.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd, lcm
import re

from sympy import factorint
from sympy.ntheory.modular import crt

from .errors import InvalidParameterError, NonUnitError
from .padic import val

_MAT_RE = re.compile(
    r"^\s*\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*\]"
    r"\s*(?:mod\s+(\d+))?\s*$"
)


@lru_cache(maxsize=None)
def prime_power(m: int) -> tuple[int, int]:
    """(p, n) with m = p^n; raises for anything else."""
    f = factorint(m)
    if len(f) != 1:
        raise InvalidParameterError(f"{m} is not a prime power")
    ((p, n),) = f.items()
    return int(p), int(n)


@lru_cache(maxsize=None)
def prime_power_factors(m: int) -> tuple[tuple[int, int], ...]:
    """The (p, n) with p^n || m, in increasing p."""
    return tuple(sorted((int(p), int(n)) for p, n in factorint(m).items()))


@dataclass(frozen=True)
class Mat2:
    a: int
    b: int
    c: int
    d: int
    modulus: int

    def __post_init__(self):
        m = self.modulus
        if m < 2:
            raise InvalidParameterError(f"modulus must be at least 2, got {m}")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % m)

    @classmethod
    def identity(cls, m: int) -> "Mat2":
        return cls(1, 0, 0, 1, m)

    @classmethod
    def scalar(cls, x: int, m: int) -> "Mat2":
        return cls(x, 0, 0, x, m)

    @classmethod
    def parse(cls, text: str, modulus: int | None = None) -> "Mat2":
        """Read "[[a,b],[c,d]] mod m"; the mod suffix may be replaced by ``modulus``."""
        match = _MAT_RE.match(text)
        if not match:
            raise ValueError(f"cannot parse matrix {text!r}")
        a, b, c, d, m = match.groups()
        m = int(m) if m is not None else modulus
        if m is None:
            raise ValueError(f"no modulus given for {text!r}")
        if modulus is not None and m != modulus:
            raise ValueError(f"modulus {m} in {text!r} differs from {modulus}")
        return cls(int(a), int(b), int(c), int(d), m)

    def format(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]] mod {self.modulus}"

    __str__ = format

    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def _check(self, other: "Mat2") -> None:
        if self.modulus != other.modulus:
            raise InvalidParameterError(
                f"modulus mismatch: {self.modulus} vs {other.modulus}")

    def __mul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.a * other.a + self.b * other.c,
                    self.a * other.b + self.b * other.d,
                    self.c * other.a + self.d * other.c,
                    self.c * other.b + self.d * other.d,
                    self.modulus)

    def __add__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.a + other.a, self.b + other.b,
                    self.c + other.c, self.d + other.d, self.modulus)

    def __sub__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.a - other.a, self.b - other.b,
                    self.c - other.c, self.d - other.d, self.modulus)

    def __pow__(self, k: int) -> "Mat2":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Mat2.identity(self.modulus)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, x: int, y: int) -> tuple[int, int]:
        """Action on column vectors."""
        m = self.modulus
        return (self.a * x + self.b * y) % m, (self.c * x + self.d * y) % m

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.modulus

    def trace(self) -> int:
        return (self.a + self.d) % self.modulus

    def is_invertible(self) -> bool:
        return gcd(self.det(), self.modulus) == 1

    def inverse(self) -> "Mat2":
        if not self.is_invertible():
            raise NonUnitError(f"{self.format()} is not invertible")
        m = self.modulus
        inv = pow(self.det(), -1, m)
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, m)

    def conjugate(self, h: "Mat2") -> "Mat2":
        """h g h^-1."""
        return h * self * h.inverse()

    def sub_identity(self) -> "Mat2":
        return Mat2(self.a - 1, self.b, self.c, self.d - 1, self.modulus)

    def reduce(self, m: int) -> "Mat2":
        if self.modulus % m:
            raise InvalidParameterError(f"{m} does not divide {self.modulus}")
        return Mat2(self.a, self.b, self.c, self.d, m)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d


@dataclass(frozen=True)
class SmithForm:
    """Exponents (e1, e2) of diag(p^e1, p^e2), both capped at n."""

    e1: int
    e2: int


def mu_depth(g: Mat2) -> int:
    """Largest mu <= n with g scalar mod p^mu."""
    p, n = prime_power(g.modulus)
    return min(val(g.a - g.d, p, n), val(g.b, p, n), val(g.c, p, n))


def smith(g: Mat2) -> SmithForm:
    p, n = prime_power(g.modulus)
    e1 = min(val(x, p, n) for x in g.entries())
    if e1 >= n:
        return SmithForm(n, n)
    s = p ** e1
    a, b, c, d = (x // s for x in g.entries())
    e2 = min(e1 + val(a * d - b * c, p, n - e1), n)
    return SmithForm(e1, e2)


def crt_split(g: Mat2) -> list[Mat2]:
    """Reductions of g modulo each prime power of its modulus, in increasing p."""
    return [g.reduce(p ** n) for p, n in prime_power_factors(g.modulus)]


def crt_join(parts: list[Mat2]) -> Mat2:
    moduli = [part.modulus for part in parts]
    entries = []
    for i in range(4):
        x, _ = crt(moduli, [part.entries()[i] for part in parts])
        entries.append(int(x))
    return Mat2(*entries, reduce(lambda u, v: u * v, moduli))


def group_exponent(m: int) -> int:
    """A multiple of every element order in GL2(Z/m)."""
    return lcm(*((p * p - 1) * p ** n for p, n in prime_power_factors(m)))


def matrix_order(g: Mat2) -> int:
    """Exact order, found by descending from the group exponent."""
    if not g.is_invertible():
        raise NonUnitError(f"{g.format()} is not invertible")
    one = Mat2.identity(g.modulus)
    order = group_exponent(g.modulus)
    for r in factorint(order):
        while order % r == 0 and g ** (order // r) == one:
            order //= r
    return order
