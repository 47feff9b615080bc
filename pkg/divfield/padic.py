"""
p-adic arithmetic on residues and truncated expansions:
- capped valuations (the cap stands in for an infinite valuation)
- unit orders o_alpha and the depth v_alpha of a unit
- square roots mod p^n: sympy seeds the root mod p, Newton lifts it
- Teichmuller representatives by iterated p-th powering
- TruncatedPadic values carrying their own precision
"""
from __future__ import annotations

from dataclasses import dataclass
import logging
from typing import Sequence

from sympy.ntheory import legendre_symbol, n_order
from sympy.ntheory import sqrt_mod as sympy_sqrt_mod

from .errors import InvalidParameterError, NonUnitError, PrecisionError

logger = logging.getLogger(__name__)


def val(x: int, p: int, cap: int) -> int:
    """v_p(x) capped at ``cap``; residues divisible by p^cap report cap."""
    x %= p ** cap
    if x == 0:
        return cap
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def legendre(x: int, p: int) -> int:
    """Legendre symbol (x/p) for an odd prime p; 0 when p divides x."""
    x %= p
    if x == 0:
        return 0
    return legendre_symbol(x, p)


@dataclass(frozen=True)
class PValued:
    """A residue modulo p^n, p an odd prime."""

    value: int
    p: int
    n: int

    def __post_init__(self):
        if self.p % 2 == 0 or self.p < 3:
            raise InvalidParameterError(f"p must be an odd prime, got {self.p}")
        if self.n < 1:
            raise InvalidParameterError(f"precision must be positive, got {self.n}")
        object.__setattr__(self, "value", self.value % self.p ** self.n)

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def reduce(self, k: int) -> "PValued":
        return PValued(self.value, self.p, min(k, self.n))

    def __int__(self) -> int:
        return self.value

    def _require_unit(self) -> None:
        if not self.is_unit():
            raise NonUnitError(f"{self.value} is not a unit mod {self.p}^{self.n}")


def residue_order(alpha: PValued) -> int:
    """Order of alpha mod p, written o_alphabar."""
    alpha._require_unit()
    return int(n_order(alpha.value % alpha.p, alpha.p))


def v_alpha(alpha: PValued) -> int:
    """min(v(alpha^o - 1), n) where o is the order of alpha mod p."""
    alpha._require_unit()
    o = residue_order(alpha)
    return val(pow(alpha.value, o, alpha.modulus) - 1, alpha.p, alpha.n)


def unit_order(alpha: PValued) -> int:
    """Multiplicative order of alpha in (Z/p^n)^x."""
    return residue_order(alpha) * alpha.p ** max(alpha.n - v_alpha(alpha), 0)


def order_mod(a: int, p: int, t: int) -> int:
    """Order of the unit a modulo p^t; the trivial group when t = 0."""
    if t <= 0:
        return 1
    return unit_order(PValued(a, p, t))


def _eval(coeffs: Sequence[int], x: int, m: int) -> int:
    y = 0
    for c in reversed(coeffs):
        y = (y * x + c) % m
    return y


def _derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class TruncatedPadic:
    """
    p^valuation * unit, with unit known mod p^precision.

    The exact zero of a computation is represented with unit 0 and
    precision 0; its valuation is then the absolute precision reached.
    """

    unit: int
    valuation: int
    precision: int
    p: int

    @classmethod
    def from_int(cls, x: int, p: int, absolute: int, shift: int = 0) -> "TruncatedPadic":
        """x known mod p^absolute, scaled by p^shift."""
        x %= p ** absolute
        if x == 0:
            return cls(0, absolute + shift, 0, p)
        v = val(x, p, absolute)
        rel = absolute - v
        return cls((x // p ** v) % p ** rel, v + shift, rel, p)

    @property
    def absolute_precision(self) -> int:
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        return self.precision == 0

    def shift(self, k: int) -> "TruncatedPadic":
        """Multiply by p^k (k may be negative)."""
        return TruncatedPadic(self.unit, self.valuation + k, self.precision, self.p)

    def __mul__(self, other: "TruncatedPadic") -> "TruncatedPadic":
        if self.is_zero() or other.is_zero():
            lo = min(self.absolute_precision + other.valuation,
                     other.absolute_precision + self.valuation)
            return TruncatedPadic(0, lo, 0, self.p)
        rel = min(self.precision, other.precision)
        return TruncatedPadic((self.unit * other.unit) % self.p ** rel,
                              self.valuation + other.valuation, rel, self.p)

    def __add__(self, other: "TruncatedPadic") -> "TruncatedPadic":
        """Exact to the smaller absolute precision; a full cancellation gives the zero marker."""
        absolute = min(self.absolute_precision, other.absolute_precision)
        base = min(self.valuation, other.valuation)
        if absolute <= base:
            return TruncatedPadic(0, absolute, 0, self.p)
        total = 0
        for t in (self, other):
            if not t.is_zero():
                total += t.unit * self.p ** (t.valuation - base)
        return TruncatedPadic.from_int(total, self.p, absolute - base, shift=base)

    def __neg__(self) -> "TruncatedPadic":
        if self.is_zero():
            return self
        return TruncatedPadic((-self.unit) % self.p ** self.precision,
                              self.valuation, self.precision, self.p)

    def __sub__(self, other: "TruncatedPadic") -> "TruncatedPadic":
        return self + (-other)

    def residue(self, k: int) -> int:
        """The value mod p^k; needs a non-negative valuation and k known digits."""
        if self.absolute_precision < k:
            raise PrecisionError(f"only {self.absolute_precision} digits known, {k} requested")
        if self.valuation < 0:
            raise PrecisionError("negative valuation has no residue")
        if self.is_zero():
            return 0
        return (self.unit * self.p ** self.valuation) % self.p ** k

    def capped_valuation(self, cap: int) -> int:
        # for the zero marker the valuation is the absolute precision reached
        if self.is_zero() and self.valuation < cap:
            raise PrecisionError(f"valuation is at least {self.valuation}; {cap} digits needed to cap it")
        return min(self.valuation, cap)


def hensel_root(coeffs: Sequence[int], x0: int, p: int, precision: int) -> TruncatedPadic:
    """
    Lift a simple root x0 of f mod p to a root mod p^precision.

    coeffs lists f from the constant term up. Newton steps double the
    number of correct digits.
    """
    if _eval(coeffs, x0, p) != 0:
        raise InvalidParameterError(f"{x0} is not a root of f mod {p}")
    df = _derivative(coeffs)
    if _eval(df, x0, p) == 0:
        raise NonUnitError(f"f'({x0}) vanishes mod {p}; rescale before lifting")
    x, k = x0 % p, 1
    while k < precision:
        k = min(2 * k, precision)
        m = p ** k
        x = (x - _eval(coeffs, x, m) * pow(_eval(df, x, m), -1, m)) % m
    return TruncatedPadic.from_int(x, p, precision)


def sqrt_mod(x: PValued) -> PValued | None:
    """A square root of x mod p^n, or None when x is not a square."""
    p, n = x.p, x.n
    if x.value == 0:
        return PValued(0, p, n)
    v = val(x.value, p, n)
    if v % 2:
        return None
    rel = n - v
    u = (x.value // p ** v) % p ** rel
    if legendre(u, p) != 1:
        return None
    seed = int(sympy_sqrt_mod(u % p, p))
    root = hensel_root([-u, 0, 1], seed, p, rel).residue(rel)
    r = (p ** (v // 2) * root) % x.modulus
    return PValued(min(r, (-r) % x.modulus), p, n)


def teichmuller(alpha: PValued) -> PValued:
    """The (p-1)-st root of unity congruent to alpha mod p, at alpha's precision."""
    alpha._require_unit()
    m = alpha.modulus
    w = alpha.value
    while True:
        nxt = pow(w, alpha.p, m)
        if nxt == w:
            return PValued(w, alpha.p, alpha.n)
        w = nxt


def z_mu(alpha: PValued, mu: int, precision: int) -> TruncatedPadic:
    """
    The maximal-valuation root z^mu(alpha) of det(g^k - 1), to ``precision``
    digits: (omega - alpha)^2 / p^mu with omega the Teichmuller lift.
    """
    alpha._require_unit()
    if mu < 0:
        raise InvalidParameterError(f"mu must be non-negative, got {mu}")
    p = alpha.p
    work = precision + mu
    omega = teichmuller(PValued(alpha.value, p, work)).value
    diff = (omega - alpha.value) % p ** work
    return TruncatedPadic.from_int(diff * diff, p, work, shift=-mu)
