"""
Double coset types.

A double coset type is a multiset of terms count x (b, c): count orbits of
size b on the primitive vectors W, each splitting into inertia orbits of
size c. Read as a factorization it says: count primes with ramification
index c and residual degree b / c.

This module holds the DCType value, the standard types DCT(k0; a[, b]) and
DCT(k1, k2; a[, b]), the tensor product over coprime moduli, the per-class
unramified types, and the two ramified families (multiplicative and
ordinary reduction).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd, lcm
import logging
import re
from typing import Iterable

from .conjugacy import (
    ClassLabel,
    Kind,
    classify_N,
    coset_space_size,
    representative,
)
from .errors import InvalidParameterError, NonUnitError
from .mat2 import Mat2, matrix_order
from .padic import (
    PValued,
    TruncatedPadic,
    order_mod,
    residue_order,
    unit_order,
    v_alpha,
    val,
    z_mu,
)

logger = logging.getLogger(__name__)

_TERM_RE = re.compile(
    r"^\s*(\d+)\s*[x×*]\s*(?:\(\s*(\d+)\s*,\s*(\d+)\s*\)|(\d+))\s*$"
)

Term = tuple[int, int, int]


@dataclass(frozen=True)
class DCType:
    """Canonical multiset of (count, b, c): merged, sorted by (b, c)."""

    terms: tuple[Term, ...]

    @classmethod
    def from_terms(cls, terms: Iterable[Term]) -> "DCType":
        merged: dict[tuple[int, int], int] = defaultdict(int)
        for count, b, c in terms:
            if count < 0 or b < 1 or c < 1 or b % c:
                raise InvalidParameterError(f"invalid term {count} x ({b},{c})")
            if count:
                merged[(b, c)] += count
        return cls(tuple((merged[key], *key) for key in sorted(merged)))

    @classmethod
    def unit(cls) -> "DCType":
        return cls(((1, 1, 1),))

    @classmethod
    def parse(cls, text: str) -> "DCType":
        terms = []
        for chunk in text.split("+"):
            match = _TERM_RE.match(chunk)
            if not match:
                raise ValueError(f"cannot parse term {chunk!r}")
            count, b, c, plain = match.groups()
            if plain is not None:
                terms.append((int(count), int(plain), 1))
            else:
                terms.append((int(count), int(b), int(c)))
        return cls.from_terms(terms)

    def is_unramified(self) -> bool:
        return all(c == 1 for _, _, c in self.terms)

    def format(self) -> str:
        if self.is_unramified():
            return " + ".join(f"{a} x {b}" for a, b, _ in self.terms)
        return " + ".join(f"{a} x ({b},{c})" for a, b, c in self.terms)

    __str__ = format

    def to_json(self) -> list[dict]:
        return [{"count": a, "b": b, "c": c} for a, b, c in self.terms]

    def mass(self) -> int:
        return sum(a * b for a, b, _ in self.terms)

    def prime_count(self) -> int:
        return sum(a for a, _, _ in self.terms)

    def min_degree(self) -> int:
        return min(b // c for _, b, c in self.terms)

    def scale(self, k: int) -> "DCType":
        return DCType.from_terms((k * a, b, c) for a, b, c in self.terms)

    def __add__(self, other: "DCType") -> "DCType":
        return DCType.from_terms(self.terms + other.terms)


def tensor(d1: DCType, d2: DCType) -> DCType:
    terms = []
    for a1, b1, c1 in d1.terms:
        for a2, b2, c2 in d2.terms:
            b = lcm(b1, b2)
            terms.append((a1 * b1 * a2 * b2 // b, b, lcm(c1, c2)))
    return DCType.from_terms(terms)


def tensor_all(types: Iterable[DCType]) -> DCType:
    return reduce(tensor, types, DCType.unit())


def to_factorization(d: DCType) -> list[tuple[int, int, int]]:
    """(count, e, f) per term: count primes of ramification e and degree f."""
    return [(a, c, b // c) for a, b, c in d.terms]


def _term(numerator: int, k: int, size: int) -> Term:
    if numerator % k:
        raise InvalidParameterError(f"{numerator}/{k} is not an integral count")
    return numerator // k, k * size, 1


def _check_range(p: int, n: int, a: int, b: int) -> None:
    if not 0 <= a <= b <= n:
        raise InvalidParameterError(f"need 0 <= a <= b <= n, got a={a}, b={b}, n={n}")


def std_dct(p: int, n: int, k0: int, a: int, b: int | None = None) -> DCType:
    """DCT(k0; a) and DCT(k0; a, b) over Z/p^n."""
    b = a if b is None else b
    _check_range(p, n, a, b)
    if gcd(k0, p) != 1:
        raise InvalidParameterError(f"k0={k0} is not prime to p={p}")
    if a == b:
        if n + a < 2:
            raise InvalidParameterError(f"DCT({k0};{a}) is not defined for n={n}")
        return DCType.from_terms([_term((p * p - 1) * p ** (n + a - 2), k0, p ** (n - a))])
    terms = [_term((p - 1) * p ** (n + a - 1), k0, p ** (n - b))]
    for u in range(n - b + 1, n - a):
        terms.append(_term((p - 1) ** 2 * p ** (n + a - 2), k0, p ** u))
    terms.append(_term((p - 1) * p ** (n + a - 1), k0, p ** (n - a)))
    return DCType.from_terms(terms)


def std_dct2(p: int, n: int, k1: int, k2: int, a: int, b: int | None = None) -> DCType:
    """
    DCT(k1, k2; a) and DCT(k1, k2; a, b): the type of diag(x, y) with x of
    residue order k1 and depth a, y of residue order k2 and depth b.

    One expression covers the k1 | k2, k2 | k1 and incomparable cases, with
    k3 = lcm(k1, k2); terms of equal size merge.
    """
    b = a if b is None else b
    _check_range(p, n, a, b)
    if k1 == k2:
        raise InvalidParameterError("DCT(k1,k2;...) needs k1 != k2")
    if gcd(k1 * k2, p) != 1:
        raise InvalidParameterError(f"orders {k1}, {k2} must be prime to p={p}")
    if a < 1:
        raise InvalidParameterError("depths of units are at least 1")
    k3 = lcm(k1, k2)
    terms = [
        _term((p - 1) * p ** (a - 1), k1, p ** (n - a)),
        _term((p - 1) * p ** (b - 1), k2, p ** (n - b)),
        _term((p - 1) * (p ** min(n - 1, n - b + a) - 1) * p ** (b - 1), k3, p ** (n - b)),
    ]
    for u in range(n - b + 1, n - a):
        terms.append(_term((p - 1) ** 2 * p ** (n + a - 2), k3, p ** u))
    terms.append(_term((p - 1) * (p ** n - 1) * p ** (a - 1), k3, p ** (n - a)))
    return DCType.from_terms(terms)


@dataclass(frozen=True)
class UValues:
    u1: int | None = None
    u2: int | None = None
    u3: int | None = None
    u4: int | None = None


def _gap(shifted: int, z: TruncatedPadic, p: int, n: int) -> int:
    """v(shifted - z) capped at n."""
    return (TruncatedPadic.from_int(shifted, p, n) - z).capped_valuation(n)


def u_values(label: ClassLabel) -> UValues:
    p, n, k = label.p, label.n, label.kind
    alpha = PValued(label.alpha, p, n)
    va = v_alpha(alpha)
    if k is Kind.I_PRIME_MN:
        mu, nu = label.mu, label.nu
        if nu < 2 * va - mu:
            return UValues(u1=nu)
        if nu > 2 * va - mu:
            return UValues(u1=min(2 * va - mu, n))
        return UValues(u1=_gap(p ** nu * label.beta, z_mu(alpha, mu, n), p, n))
    if k in (Kind.I_MINUS, Kind.I_PLUS):
        mu = label.mu
        if mu < va:
            return UValues(u2=mu)
        if mu > va:
            return UValues(u2=2 * va - mu)
        return UValues(u2=_gap(p ** mu * label.beta, z_mu(alpha, mu, n), p, n))
    if k is Kind.II:
        beta = label.beta
        if p == 3 and n >= 2 and beta % 3:
            a = label.alpha
            eps = 1 if a % 3 == 1 else -1
            u4 = min(2 * val(6 * beta - 2 * a * a - 2 * eps * a + 1, 3, n) - 1,
                     2 * val(2 * a + eps, 3, n),
                     2 * n - 2)
            return UValues(u4=u4)
        vb = val(beta, p, n - 1) if n > 1 else n
        if vb < 2 * va - 1:
            return UValues(u3=min(vb + 1, n))
        if vb > 2 * va - 1:
            return UValues(u3=min(2 * va, n))
        return UValues(u3=_gap(p * beta, z_mu(alpha, 0, n), p, n))
    raise InvalidParameterError(f"no u-values for class kind {k.value}")


@lru_cache(maxsize=None)
def unramified_dct(label: ClassLabel) -> DCType:
    """Type of <g> acting on W for any g in the class."""
    p, n, k = label.p, label.n, label.kind
    if k is Kind.IV:
        order = matrix_order(representative(label))
        return DCType.from_terms([(coset_space_size(p, n) // order, order, 1)])
    alpha = PValued(label.alpha, p, n)
    o = residue_order(alpha)
    va = v_alpha(alpha)

    if k is Kind.I:
        return std_dct(p, n, o, va)
    if k is Kind.I_PRIME_MN:
        mu = label.mu
        u1 = u_values(label).u1
        if va <= mu:
            return std_dct(p, n, o, va, min(u1 + mu - va, n))
        return std_dct(p, n, o, mu, u1)
    if k is Kind.I_PRIME_M:
        mu = label.mu
        if va <= mu:
            return std_dct(p, n, o, va)
        return std_dct(p, n, o, mu, min(2 * va - mu, n))
    if k in (Kind.I_MINUS, Kind.I_PLUS):
        mu = label.mu
        if va != mu:
            return std_dct(p, n, o, min(va, mu))
        return std_dct(p, n, o, mu, u_values(label).u2)
    if k is Kind.II:
        u = u_values(label)
        if u.u4 is None:
            return std_dct(p, n, o, 0, u.u3)
        if u.u4 % 2 == 0:
            return std_dct(p, n, o, u.u4 // 2)
        return std_dct(p, n, o, (u.u4 - 1) // 2, (u.u4 + 1) // 2)

    beta = PValued(label.beta, p, n)
    pairs = sorted([(va, o), (v_alpha(beta), residue_order(beta))])
    (a, k1), (b, k2) = pairs
    if k1 == k2:
        return std_dct(p, n, k1, a, b)
    return std_dct2(p, n, k1, k2, a, b)


def unramified_dct_N(g: Mat2) -> DCType:
    return tensor_all(unramified_dct(label) for label in classify_N(g))


def _stratum_size(p: int, n: int, v: int) -> int:
    """Residues mod p^n of valuation exactly v (v = n means zero)."""
    return 1 if v >= n else (p - 1) * p ** (n - v - 1)


def _collect(strata: Iterable[tuple[int, int, int]]) -> DCType:
    elements: dict[tuple[int, int], int] = defaultdict(int)
    for count, b, c in strata:
        elements[(b, c)] += count
    terms = []
    for (b, c), total in elements.items():
        if total % b:
            raise InvalidParameterError(f"{total} vectors do not split into orbits of size {b}")
        terms.append((total // b, b, c))
    return DCType.from_terms(terms)


def _pair(numerator: int, k: int, b: int, c: int) -> Term:
    if numerator % k:
        raise InvalidParameterError(f"{numerator}/{k} is not an integral count")
    return numerator // k, b, c


def _mult_units(p: int, n: int, alpha: int, eps: int, b1: int, b2: int) -> PValued:
    if eps not in (1, -1):
        raise InvalidParameterError(f"eps must be +1 or -1, got {eps}")
    _check_range(p, n, b1, b2)
    a = PValued(alpha, p, n)
    if not a.is_unit():
        raise NonUnitError(f"{alpha} is not a unit mod {p}^{n}")
    return a


def mult_dct(p: int, n: int, alpha: int, eps: int, b1: int, b2: int) -> DCType:
    """
    Pair type of D = {[[alpha^i, p^b1 j], [0, eps^i]]} with inertia
    I = {[[1, p^b2 j], [0, 1]]}, in closed form.

    Three regimes: b1 = 0, 0 < b1 < v_alpha and b1 >= v_alpha.
    """
    a = _mult_units(p, n, alpha, eps, b1, b2)
    o, va = residue_order(a), v_alpha(a)
    o_eps = 1 if eps == 1 else 2
    o2 = lcm(o, o_eps)
    sq = (p - 1) ** 2

    def inert(u: int) -> int:
        return p ** max(n - b2 - u, 0)

    terms = [_pair((p - 1) * p ** (va - 1), o, unit_order(a), 1)]
    if b1 == 0:
        terms += [_pair(sq * p ** (n - 2), o2, o2 * p ** (n - u), inert(u))
                  for u in range(1, min(va, n - 1) + 1)]
        terms += [_pair(sq * p ** (n + va - u - 2), o2, o2 * p ** (n - va), inert(u))
                  for u in range(va + 1, n)]
        terms.append(_pair((p - 1) * p ** (n - 1), o_eps, o_eps * p ** n, p ** (n - b2)))
    elif b1 < va:
        terms.append(_pair((p - 1) * p ** (n - 1) * (p ** b1 - 1), o2, o2 * p ** (n - b1), p ** (n - b2)))
        terms.append(_pair((p - 1) * p ** (n - 1), o_eps, o_eps * p ** (n - b1), p ** (n - b2)))
        # the printed "(p-1)2" here is (p-1)^2: it counts v(x) = 0, v(y) = u
        terms += [_pair(sq * p ** (n + b1 - 2), o2, o2 * p ** (n - b1 - u), inert(u))
                  for u in range(1, va - b1)]
        terms += [_pair(sq * p ** (n + va - u - 2), o2, o2 * p ** (n - va), inert(u))
                  for u in range(va - b1, n - b1)]
        terms.append(_pair((p - 1) * p ** (va - 1) * (p ** b1 - 1), o2, o2 * p ** (n - va), 1))
    else:
        terms += [_pair(sq * p ** (n + va - u - 2), o2, o2 * p ** (n - va), p ** (n - b2 - u))
                  for u in range(n - b2)]
        terms.append(_pair((p - 1) * p ** (va - 1) * (p ** b2 - 1), o2, o2 * p ** (n - va), 1))
        terms += [_pair(sq * p ** (n + va - 2), o2, o2 * p ** (n - va - u), p ** (n - b2))
                  for u in range(1, b1 - va + 1)]
        terms.append(_pair((p - 1) * p ** (n - 1) * (p ** (va - 1) - 1), o2, o2 * p ** (n - b1), p ** (n - b2)))
        terms.append(_pair((p - 1) * p ** (n - 1), o_eps, o_eps * p ** (n - b1), p ** (n - b2)))
    return DCType.from_terms(terms)


def _mult_strata(p: int, n: int, alpha: int, eps: int, b1: int, b2: int) -> DCType:
    """mult_dct counted stratum by stratum over (v(x), v(y)) on the primitive vectors."""
    a = _mult_units(p, n, alpha, eps, b1, b2)
    o_eps = 1 if eps == 1 else 2
    beta = pow(a.value, o_eps, a.modulus)
    strata = [(_stratum_size(p, n, 0), unit_order(a), 1)]
    for r in range(n):
        for s in range(n + 1):
            if min(s, r) != 0:
                continue
            t = max(min(b1 + r, n) - s, 0)
            b = o_eps * order_mod(beta, p, t) * p ** max(n - b1 - r, 0)
            c = p ** max(n - b2 - r, 0)
            strata.append((_stratum_size(p, n, s) * _stratum_size(p, n, r), b, c))
    return _collect(strata)


def _ord_unit(p: int, n: int, alpha: int) -> PValued:
    a = PValued(alpha, p, n)
    if not a.is_unit():
        raise NonUnitError(f"{alpha} is not a unit mod {p}^{n}")
    return a


def ord_dct(p: int, n: int, alpha: int) -> DCType:
    """
    Pair type of D = {[[alpha^k a, b], [0, alpha^-k]]} with inertia
    I = {[[a, b], [0, 1]]}, in closed form.
    """
    a = _ord_unit(p, n, alpha)
    o, va = residue_order(a), v_alpha(a)
    phi = (p - 1) * p ** (n - 1)
    top = (p - 1) * p ** (va - 1)
    terms = [_pair(top, o, o * p ** (2 * n - va), p ** n)]
    terms += [_pair(top, o, o * (p - 1) * p ** (2 * n - 1 - va - u), phi)
              for u in range(1, n - va)]
    terms.append(_pair(p ** min(n - 1, va) - 1, o, o * phi, phi))
    terms.append((1, phi, phi))
    return DCType.from_terms(terms)


def _ord_strata(p: int, n: int, alpha: int) -> DCType:
    """ord_dct counted stratum by stratum over v(y)."""
    a = _ord_unit(p, n, alpha)
    phi = (p - 1) * p ** (n - 1)
    strata = [(p ** n * phi, unit_order(a) * p ** n, p ** n), (phi, phi, phi)]
    for r in range(1, n):
        strata.append((phi * _stratum_size(p, n, r), order_mod(a.value, p, n - r) * phi, phi))
    return _collect(strata)
