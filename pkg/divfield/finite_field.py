"""
Arithmetic in F_q[x] and in extension fields F_{q^d} = F_q[t]/(m(t)).

Polynomials are mpyc GFpX values. Coefficient lists handed to GFpX must lie
in [0, q) without trailing zeros, and plain ints are read as base-q digit
strings, so every constant goes through poly().
"""
from __future__ import annotations

from functools import lru_cache
import logging
import random
from typing import Sequence

from mpyc import gfpx

from .errors import InvalidParameterError

logger = logging.getLogger(__name__)


def poly_ring(q: int):
    return gfpx.GFpX(q)


def poly(ring, coeffs: Sequence[int]):
    """Ring element with the given integer coefficients, constant term first."""
    q = ring.p
    c = [x % q for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return ring(c)


def coefficients(f) -> list[int]:
    return [int(c) for c in f]


def x_power_mod(ring, e: int, modulus):
    """x^e mod modulus."""
    x = poly(ring, [0, 1]) % modulus
    return ring.powmod(x, e, modulus)


@lru_cache(maxsize=None)
def _defining_poly(q: int, d: int):
    ring = poly_ring(q)
    # smallest monic irreducible of degree d in lexicographic order
    return ring.next_irreducible(poly(ring, [q - 1] * d))


class FiniteField:
    """F_{q^d}, elements represented by polynomials of degree < d."""

    def __init__(self, q: int, d: int = 1):
        if d < 1:
            raise InvalidParameterError(f"degree must be positive, got {d}")
        self.q = q
        self.d = d
        self.order = q ** d
        self.ring = poly_ring(q)
        self.modulus = _defining_poly(q, d)
        self._nonsquare: FqElem | None = None

    def __repr__(self) -> str:
        return f"FiniteField({self.q}^{self.d})"

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            return value
        if isinstance(value, int):
            return FqElem(self, poly(self.ring, [value]))
        if isinstance(value, (list, tuple)):
            return FqElem(self, poly(self.ring, value) % self.modulus)
        return FqElem(self, value % self.modulus)

    def zero(self) -> "FqElem":
        return self(0)

    def one(self) -> "FqElem":
        return self(1)

    def random(self, rng: random.Random) -> "FqElem":
        return self([rng.randrange(self.q) for _ in range(self.d)])

    def nonsquare(self, rng: random.Random) -> "FqElem":
        while self._nonsquare is None:
            z = self.random(rng)
            if not z.is_zero() and not z.is_square():
                self._nonsquare = z
        return self._nonsquare


class FqElem:
    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value):
        self.field = field
        self.value = value

    def _lift(self, other) -> "FqElem":
        return other if isinstance(other, FqElem) else self.field(other)

    def __add__(self, other) -> "FqElem":
        return FqElem(self.field, self.value + self._lift(other).value)

    __radd__ = __add__

    def __sub__(self, other) -> "FqElem":
        return FqElem(self.field, self.value - self._lift(other).value)

    def __rsub__(self, other) -> "FqElem":
        return self._lift(other) - self

    def __neg__(self) -> "FqElem":
        return FqElem(self.field, -self.value)

    def __mul__(self, other) -> "FqElem":
        f = self.field
        return FqElem(f, (self.value * self._lift(other).value) % f.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        f = self.field
        return FqElem(f, f.ring.invert(self.value, f.modulus))

    def __truediv__(self, other) -> "FqElem":
        return self * self._lift(other).inverse()

    def __pow__(self, e: int) -> "FqElem":
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        if e == 0:
            return f.one()
        return FqElem(f, f.ring.powmod(self.value, e, f.modulus))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FqElem):
            other = self.field(other)
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(tuple(coefficients(self.value)))

    def __repr__(self) -> str:
        return f"FqElem({coefficients(self.value)})"

    def is_zero(self) -> bool:
        return self.value.degree() < 0

    def is_square(self) -> bool:
        if self.is_zero():
            return True
        return self ** ((self.field.order - 1) // 2) == 1

    def sqrt(self, rng: random.Random) -> "FqElem | None":
        """Tonelli-Shanks square root, or None for non-squares."""
        if self.is_zero():
            return self
        if not self.is_square():
            return None
        order = self.field.order
        s, t = 0, order - 1
        while t % 2 == 0:
            s += 1
            t //= 2
        z = self.field.nonsquare(rng)
        c = z ** t
        x = self ** ((t + 1) // 2)
        b = self ** t
        m = s
        while b != 1:
            i, b2 = 0, b
            while b2 != 1:
                b2 = b2 * b2
                i += 1
            w = c ** (2 ** (m - i - 1))
            x = x * w
            c = w * w
            b = b * c
            m = i
        return x
