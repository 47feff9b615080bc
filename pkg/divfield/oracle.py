"""
Brute-force ground truth for the closed forms in dct.

Orbits are found with a union-find over the index space x*m + y of
(Z/m)^2, joining every primitive vector with its images under the group
generators; groups are never listed element by element. Size guards from
config keep every computation at desk scale.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd
import logging

import numpy as np
from sympy import divisors, mobius, primitive_root

from . import config
from .conjugacy import enumerate_classes, representative
from .dct import DCType, mult_dct, ord_dct, unramified_dct
from .errors import BudgetExceeded, InvalidParameterError, OracleMismatch
from .mat2 import Mat2, matrix_order, prime_power, smith
from .padic import val

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PrimVec:
    x: int
    y: int
    modulus: int


class UnionFind:
    """Disjoint sets over range(size), union by size with path halving."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, i: int) -> int:
        parent = self.parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i == j:
            return
        if self.size[i] < self.size[j]:
            i, j = j, i
        self.parent[j] = i
        self.size[i] += self.size[j]


def _w_indices(m: int) -> np.ndarray:
    if m * m > config.ORACLE_MAX_W * 4:
        raise BudgetExceeded(f"(Z/{m})^2 is too large for orbit enumeration")
    idx = np.arange(m * m, dtype=np.int64)
    xs, ys = np.divmod(idx, m)
    w = idx[np.gcd(np.gcd(xs, ys), m) == 1]
    if len(w) > config.ORACLE_MAX_W:
        raise BudgetExceeded(f"|W| = {len(w)} exceeds {config.ORACLE_MAX_W}")
    return w


def enumerate_W(modulus: int) -> list[PrimVec]:
    """All primitive vectors of (Z/modulus)^2."""
    w = _w_indices(modulus)
    return [PrimVec(int(i) // modulus, int(i) % modulus, modulus) for i in w]


def _images(g: Mat2, w: np.ndarray) -> np.ndarray:
    m = g.modulus
    xs, ys = np.divmod(w, m)
    nx = (g.a * xs + g.b * ys) % m
    ny = (g.c * xs + g.d * ys) % m
    return nx * m + ny


def _orbits(gens: list[Mat2], w: np.ndarray, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Root of each vector in w and the size of its orbit."""
    if len(w) * max(len(gens), 1) > config.ORACLE_MAX_STEPS:
        raise BudgetExceeded("group action exceeds the step budget")
    uf = UnionFind(m * m)
    for g in gens:
        for i, j in zip(w.tolist(), _images(g, w).tolist()):
            uf.union(i, j)
    roots = np.fromiter((uf.find(i) for i in w.tolist()), dtype=np.int64, count=len(w))
    sizes = np.fromiter((uf.size[r] for r in roots.tolist()), dtype=np.int64, count=len(w))
    return roots, sizes


def orbit_type(generators: list[Mat2], inertia_generators: list[Mat2], modulus: int) -> DCType:
    """
    Pair type of (D, I) acting on W: one term per D-orbit, with b the orbit
    size and c the size of the I-orbit of any of its members.
    """
    for g in list(generators) + list(inertia_generators):
        if g.modulus != modulus:
            raise InvalidParameterError(f"generator {g} is not over Z/{modulus}")
    w = _w_indices(modulus)
    d_roots, d_sizes = _orbits(generators, w, modulus)
    _, i_sizes = _orbits(inertia_generators, w, modulus)

    inertia: dict[int, int] = {}
    orbit_size: dict[int, int] = {}
    for root, b, c in zip(d_roots.tolist(), d_sizes.tolist(), i_sizes.tolist()):
        seen = inertia.setdefault(root, c)
        if seen != c:
            raise OracleMismatch(
                f"inertia orbits of sizes {seen} and {c} inside one orbit of size {b}")
        orbit_size[root] = b
    counts = Counter((orbit_size[r], inertia[r]) for r in orbit_size)
    return DCType.from_terms((count, b, c) for (b, c), count in counts.items())


def cyclic_orbit_type(g: Mat2) -> DCType:
    return orbit_type([g], [], g.modulus)


def mult_groups(p: int, n: int, alpha: int, eps: int, b1: int, b2: int) -> tuple[list[Mat2], list[Mat2]]:
    """Generators of D = {[[alpha^i, p^b1 j], [0, eps^i]]} and I = {[[1, p^b2 j], [0, 1]]}."""
    m = p ** n
    d = [Mat2(alpha, 0, 0, eps, m), Mat2(1, p ** b1, 0, 1, m)]
    i = [Mat2(1, p ** b2, 0, 1, m)]
    return d, i


def ord_groups(p: int, n: int, alpha: int) -> tuple[list[Mat2], list[Mat2]]:
    """Generators of D = {[[a alpha^k, b], [0, alpha^-k]]} and I = {[[a, b], [0, 1]]}."""
    m = p ** n
    g0 = int(primitive_root(m))
    inertia = [Mat2(g0, 0, 0, 1, m), Mat2(1, 1, 0, 1, m)]
    return [Mat2(alpha, 0, 0, pow(alpha, -1, m), m)] + inertia, inertia


def lambda_from_smith(g: Mat2) -> dict[int, int]:
    """lambda_k(g): primitive vectors in orbits of size exactly k, via Smith forms of g^k - 1."""
    p, n = prime_power(g.modulus)
    order = matrix_order(g)
    fixed: dict[int, int] = {}
    for d in divisors(order):
        s = smith((g ** d).sub_identity())
        l0 = min(s.e1, n) + min(s.e2, n)
        l1 = min(s.e1, n - 1) + min(s.e2, n - 1)
        fixed[d] = p ** l0 - p ** l1
    profile = {}
    for k in divisors(order):
        lam = sum(int(mobius(k // d)) * fixed[d] for d in divisors(k))
        if lam:
            profile[k] = lam
    return profile


def lambda_from_orbits(g: Mat2) -> dict[int, int]:
    profile: dict[int, int] = defaultdict(int)
    for count, b, _ in cyclic_orbit_type(g).terms:
        profile[b] += count * b
    return dict(profile)


def lambda_profile(g: Mat2) -> dict[int, int]:
    """lambda_k(g) from Smith forms, checked against direct orbit counting."""
    from_smith = lambda_from_smith(g)
    direct = lambda_from_orbits(g)
    if from_smith != direct:
        raise OracleMismatch(f"lambda profile of {g}: {from_smith} != {direct}")
    return from_smith


def fixed_points(g: Mat2) -> int:
    """Primitive vectors fixed by g, counted directly."""
    w = _w_indices(g.modulus)
    return int(np.count_nonzero(_images(g, w) == w))


def _poly_mul(f: list[int], h: list[int]) -> list[int]:
    out = [0] * (len(f) + len(h) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(h):
            out[i + j] += a * b
    return out


def _poly_sub(f: list[int], h: list[int]) -> list[int]:
    size = max(len(f), len(h))
    f = f + [0] * (size - len(f))
    h = h + [0] * (size - len(h))
    return [a - b for a, b in zip(f, h)]


def rs_polys(alpha: int, mu: int, k: int, p: int) -> tuple[list[int], list[int]]:
    """
    r and s with g^k = r + s (g - alpha) for g = [[alpha, p^mu x], [1, alpha]],
    as integer coefficient lists in x.
    """
    r = [comb(k, 2 * i) * alpha ** (k - 2 * i) * p ** (mu * i) for i in range(k // 2 + 1)]
    s = [comb(k, 2 * i + 1) * alpha ** (k - 2 * i - 1) * p ** (mu * i) for i in range((k - 1) // 2 + 1)]
    return r, s


def t_poly(alpha: int, mu: int, k: int, p: int, precision: int | None = None) -> list[int]:
    """det(g^k - 1) = (r - 1)^2 - p^mu x s^2, constant term first."""
    if k < 1:
        raise InvalidParameterError(f"k must be positive, got {k}")
    r, s = rs_polys(alpha, mu, k, p)
    r1 = [r[0] - 1] + r[1:]
    t = _poly_sub(_poly_mul(r1, r1), [0] + [p ** mu * c for c in _poly_mul(s, s)])
    while len(t) > 1 and t[-1] == 0:
        t.pop()
    if precision is not None:
        t = [c % p ** precision for c in t]
    return t


def t_eval(coeffs: list[int], x: int | Fraction) -> int | Fraction:
    y = 0
    for c in reversed(coeffs):
        y = y * x + c
    return y


def t_eval_valuation(alpha: int, mu: int, k: int, beta: int, p: int, cap: int) -> int:
    """v(t_k^mu(alpha, beta)) capped at ``cap``."""
    return val(t_eval(t_poly(alpha, mu, k, p), beta), p, cap)


def brute_conjugacy_partition(p: int, n: int) -> list[list[Mat2]]:
    """Conjugacy classes of GL2(Z/p^n) by union-find under conjugation by generators."""
    m = p ** n
    if m ** 4 > config.ORACLE_MAX_W:
        raise BudgetExceeded(f"GL2(Z/{m}) is too large to partition")
    g0 = int(primitive_root(m))
    gens = [Mat2(1, 1, 0, 1, m), Mat2(1, 0, 1, 1, m), Mat2(g0, 0, 0, 1, m)]

    def index(g: Mat2) -> int:
        return ((g.a * m + g.b) * m + g.c) * m + g.d

    elements = []
    for i in range(m ** 4):
        rest, d = divmod(i, m)
        rest, c = divmod(rest, m)
        a, b = divmod(rest, m)
        g = Mat2(a, b, c, d, m)
        if g.is_invertible():
            elements.append(g)
    uf = UnionFind(m ** 4)
    for g in elements:
        for h in gens:
            uf.union(index(g), index(g.conjugate(h)))
    classes: dict[int, list[Mat2]] = defaultdict(list)
    for g in elements:
        classes[uf.find(index(g))].append(g)
    logger.debug("GL2(Z/%d): %d elements in %d classes", m, len(elements), len(classes))
    return sorted(classes.values(), key=lambda cls: (len(cls), cls[0].entries()))


# equivalence sweeps: closed forms against orbit enumeration

@dataclass
class SweepResult:
    name: str
    modulus: int
    checked: int = 0
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _units_mod(m: int) -> list[int]:
    return [x for x in range(1, m) if gcd(x, m) == 1]


def verify_unramified(p: int, n: int) -> SweepResult:
    """Every conjugacy class of GL2(Z/p^n): closed-form type vs orbits of its representative."""
    result = SweepResult("unramified", p ** n)
    for label in enumerate_classes(p, n):
        closed = unramified_dct(label)
        brute = cyclic_orbit_type(representative(label))
        result.checked += 1
        if closed != brute:
            result.mismatches.append(f"{label.format()}: {closed} != {brute}")
    return result


def verify_mult(p: int, n: int) -> SweepResult:
    result = SweepResult("multiplicative", p ** n)
    for alpha in _units_mod(p ** n):
        for eps in (1, -1):
            for b1 in range(n + 1):
                for b2 in range(b1, n + 1):
                    closed = mult_dct(p, n, alpha, eps, b1, b2)
                    brute = orbit_type(*mult_groups(p, n, alpha, eps, b1, b2), p ** n)
                    result.checked += 1
                    if closed != brute:
                        result.mismatches.append(
                            f"alpha={alpha} eps={eps} b1={b1} b2={b2}: {closed} != {brute}")
    return result


def verify_ord(p: int, n: int) -> SweepResult:
    result = SweepResult("ordinary", p ** n)
    for alpha in _units_mod(p ** n):
        closed = ord_dct(p, n, alpha)
        brute = orbit_type(*ord_groups(p, n, alpha), p ** n)
        result.checked += 1
        if closed != brute:
            result.mismatches.append(f"alpha={alpha}: {closed} != {brute}")
    return result


def verify_lambda(p: int, n: int) -> SweepResult:
    """Smith-form lambda profiles against direct orbit counts on class representatives."""
    result = SweepResult("lambda", p ** n)
    for label in enumerate_classes(p, n):
        g = representative(label)
        result.checked += 1
        try:
            lambda_profile(g)
        except OracleMismatch as exc:
            result.mismatches.append(str(exc))
    return result


SWEEPS = {
    "unramified": verify_unramified,
    "mult": verify_mult,
    "ord": verify_ord,
    "lambda": verify_lambda,
}
