"""
Elliptic curves over Q in general Weierstrass form

    y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6

and their reductions: invariants, global minimal models, naive point
counts over F_q and F_{q^d}, reduction types at bad primes and unit roots
of Frobenius at ordinary primes.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
import re

import numpy as np
from sympy import factorint, isprime

from . import config
from .errors import (
    BadReductionError,
    BudgetExceeded,
    HypothesisViolation,
    InvalidParameterError,
)
from .padic import PValued, hensel_root, legendre, val

logger = logging.getLogger(__name__)

CURVE_ALIASES = {
    "X0(11)": (0, -1, 1, -10, -20),
    "X0+(37)": (0, 0, 1, -1, 0),
}


class Reduction(str, Enum):
    GOOD = "good"
    SPLIT = "split-mult"
    NONSPLIT = "nonsplit-mult"
    ADDITIVE = "additive"


@dataclass(frozen=True)
class CurveQ:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.disc == 0:
            raise InvalidParameterError(f"singular curve {self.coefficients}")

    @classmethod
    def from_text(cls, text: str) -> "CurveQ":
        """A named alias or "[a1,a2,a3,a4,a6]"."""
        text = text.strip()
        if text in CURVE_ALIASES:
            return cls(*CURVE_ALIASES[text])
        values = re.findall(r"-?\d+", text)
        if len(values) != 5 or not text.startswith("["):
            raise ValueError(f"cannot parse curve {text!r}")
        return cls(*(int(v) for v in values))

    @property
    def coefficients(self) -> tuple[int, int, int, int, int]:
        return self.a1, self.a2, self.a3, self.a4, self.a6

    def label(self) -> str:
        return "[" + ",".join(str(a) for a in self.coefficients) + "]"

    @property
    def b2(self) -> int:
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self) -> int:
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self) -> int:
        a1, a2, a3, a4, a6 = self.coefficients
        return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4

    @property
    def c4(self) -> int:
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self) -> int:
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.disc)

    @cached_property
    def minimal(self) -> "CurveQ":
        return minimal_model(self)

    def __str__(self) -> str:
        return self.label()


def _kraus(c4: int, c6: int) -> bool:
    """True when (c4, c6) are the invariants of an integral model."""
    if val(c6, 3, 3) == 2:
        return False
    if c6 % 4 == 3:
        return True
    return val(c4, 2, 4) >= 4 and c6 % 32 in (0, 8)


def _from_invariants(c4: int, c6: int) -> CurveQ:
    """The reduced integral model (a1, a3 in {0,1}, a2 in {-1,0,1}) with invariants c4, c6."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    b4 = (b2 * b2 - c4) // 24
    b6 = (-b2 ** 3 + 36 * b2 * b4 - c6) // 216
    a1 = b2 % 2
    a3 = b6 % 2
    return CurveQ(a1, (b2 - a1) // 4, a3, (b4 - a1 * a3) // 2, (b6 - a3) // 4)


def minimal_model(E: CurveQ) -> CurveQ:
    """Global minimal model, reduced form."""
    c4, c6, disc = E.c4, E.c6, E.disc
    for p, e in factorint(abs(disc)).items():
        while e >= 12:
            u4, u6 = p ** 4, p ** 6
            if c4 % u4 or c6 % u6 or not _kraus(c4 // u4, c6 // u6):
                break
            c4, c6, e = c4 // u4, c6 // u6, e - 12
    model = _from_invariants(c4, c6)
    if (model.c4, model.c6) != (c4, c6):
        raise HypothesisViolation(f"no integral model with invariants c4={c4}, c6={c6}")
    if model != E:
        logger.debug("minimal model of %s is %s", E, model)
    return model


def bad_primes(E: CurveQ) -> list[int]:
    return sorted(int(p) for p in factorint(abs(E.minimal.disc)))


def is_semistable(E: CurveQ) -> bool:
    m = E.minimal
    return all(m.c4 % q for q in bad_primes(E))


def conductor(E: CurveQ) -> int:
    """Product of the bad primes; only defined for semistable curves here."""
    if not is_semistable(E):
        raise HypothesisViolation(f"{E} has additive reduction somewhere")
    out = 1
    for q in bad_primes(E):
        out *= q
    return out


def _check_good(E: CurveQ, q: int) -> CurveQ:
    if not isprime(q):
        raise InvalidParameterError(f"{q} is not prime")
    m = E.minimal
    if m.disc % q == 0:
        raise BadReductionError(f"{E} has bad reduction at {q}")
    return m


def _chi_table(q: int) -> np.ndarray:
    chi = np.full(q, -1, dtype=np.int64)
    xs = np.arange(q, dtype=np.int64)
    chi[(xs * xs) % q] = 1
    chi[0] = 0
    return chi


def _brute_count(E: CurveQ, q: int) -> int:
    a1, a2, a3, a4, a6 = E.coefficients
    count = 1
    for x in range(q):
        for y in range(q):
            if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % q == 0:
                count += 1
    return count


def count_points(E: CurveQ, q: int) -> tuple[int, int]:
    """(#E(F_q), a_q) by a quadratic-character sum over x."""
    m = _check_good(E, q)
    if q > config.MAX_Q:
        raise BudgetExceeded(f"q={q} is above the point-counting bound {config.MAX_Q}")
    return _count_points(m, q)


@lru_cache(maxsize=4096)
def _count_points(m: CurveQ, q: int) -> tuple[int, int]:
    if q == 2:
        count = _brute_count(m, q)
    else:
        xs = np.arange(q, dtype=np.int64)
        x2 = xs * xs % q
        x3 = x2 * xs % q
        f = (4 * x3 + (m.b2 % q) * x2 + (2 * m.b4 % q) * xs + m.b6) % q
        count = q + 1 + int(_chi_table(q)[f].sum())
    a = q + 1 - count
    assert a * a <= 4 * q, f"Hasse bound violated at q={q}: a={a}"
    return count, a


def frobenius_trace(E: CurveQ, q: int) -> int:
    return count_points(E, q)[1]


def power_sums(a: int, q: int, d: int) -> int:
    """s_d = pi^d + pibar^d for the roots of x^2 - a x + q."""
    s_prev, s = 2, a
    if d == 0:
        return s_prev
    for _ in range(d - 1):
        s_prev, s = s, a * s - q * s_prev
    return s


def count_points_ext(a: int, q: int, d: int) -> int:
    """#E(F_{q^d}) from a_q."""
    if d < 1:
        raise InvalidParameterError(f"degree must be positive, got {d}")
    return q ** d + 1 - power_sums(a, q, d)


def is_supersingular(E: CurveQ, p: int) -> bool:
    return frobenius_trace(E, p) % p == 0


def is_anomalous(E: CurveQ, p: int) -> bool:
    return frobenius_trace(E, p) % p == 1


def _singular_x(m: CurveQ, q: int) -> int:
    """x-coordinate of the node of y^2 = F(x) mod odd q."""
    xs = np.arange(q, dtype=np.int64)
    x2 = xs * xs % q
    x3 = x2 * xs % q
    f = (4 * x3 + (m.b2 % q) * x2 + (2 * m.b4 % q) * xs + m.b6) % q
    df = (12 * x2 + (2 * m.b2 % q) * xs + 2 * m.b4) % q
    (hits,) = np.nonzero((f == 0) & (df == 0))
    if len(hits) != 1:
        raise HypothesisViolation(f"expected a single node mod {q}, found {len(hits)}")
    return int(hits[0])


def _split_at_2(m: CurveQ) -> bool:
    a1, a2, a3, a4, a6 = m.coefficients
    for x in range(2):
        for y in range(2):
            on_curve = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0
            dx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % 2 == 0
            dy = (2 * y + a1 * x + a3) % 2 == 0
            if on_curve and dx and dy:
                # tangent slopes at the node: T^2 + a1 T - (a2 + 3x) = 0
                return any((t * t + a1 * t - a2 - 3 * x) % 2 == 0 for t in range(2))
    raise HypothesisViolation("no singular point mod 2")


def reduction_type(E: CurveQ, q: int) -> Reduction:
    m = E.minimal
    if m.disc % q:
        return Reduction.GOOD
    if m.c4 % q == 0:
        return Reduction.ADDITIVE
    if q == 2:
        split = _split_at_2(m)
    elif q == 3:
        x0 = _singular_x(m, q)
        split = legendre(m.b2 + 12 * x0, q) == 1
    else:
        split = legendre(-m.c6, q) == 1
    return Reduction.SPLIT if split else Reduction.NONSPLIT


def unit_root(E: CurveQ, p: int, n: int) -> PValued:
    """The root of x^2 - a_p x + p that is a p-adic unit, mod p^n."""
    a = frobenius_trace(E, p)
    if a % p == 0:
        raise HypothesisViolation(f"{E} is supersingular at {p}")
    if a % p == 1:
        raise HypothesisViolation(f"{E} is anomalous at {p}")
    root = hensel_root([p, -a, 1], a % p, p, n)
    return PValued(root.residue(n), p, n)
