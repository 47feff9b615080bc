"""
Tate parametrization at primes of multiplicative reduction.

j(t) = 1/t + 744 + 196884 t + ... is computed exactly as E4(t)^3 / (t prod (1 - t^n)^24).
The period theta with j(theta) = j_E is the fixed point of
T -> u * t j(t)|_{t=T}, u = 1/j_E, expanded as a power series in u with
integer coefficients and evaluated q-adically.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
import logging

from sympy import divisor_sigma

from . import config
from .elliptic import CurveQ, Reduction, reduction_type
from .errors import HypothesisViolation, InvalidParameterError, PrecisionError
from .padic import val

logger = logging.getLogger(__name__)

Series = list[int]


def _mul(a: Series, b: Series, K: int, mod: int | None = None) -> Series:
    out = [0] * (K + 1)
    for i, x in enumerate(a[:K + 1]):
        if x:
            for j, y in enumerate(b[:K + 1 - i]):
                out[i + j] += x * y
    if mod is not None:
        out = [c % mod for c in out]
    return out


def _inverse(a: Series, K: int) -> Series:
    """1/a for a series with constant term 1."""
    if a[0] != 1:
        raise InvalidParameterError("series inverse needs constant term 1")
    b = [1] + [0] * K
    for k in range(1, K + 1):
        b[k] = -sum(a[i] * b[k - i] for i in range(1, min(k, len(a) - 1) + 1))
    return b


@lru_cache(maxsize=None)
def j_series(K: int) -> tuple[int, ...]:
    """Coefficients of t*j(t) up to t^K: 1, 744, 196884, ..."""
    e4 = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, K + 1)]
    e4_cubed = _mul(_mul(e4, e4, K), e4, K)
    eta = [1] + [0] * K
    for n in range(1, K + 1):
        factor = [1] + [0] * K
        factor[n] = -1
        eta = _mul(eta, factor, K)
    eta24 = [1] + [0] * K
    for _ in range(24):
        eta24 = _mul(eta24, eta, K)
    return tuple(_mul(e4_cubed, _inverse(eta24, K), K))


def period_series(K: int, mod: int | None = None) -> Series:
    """theta as a power series in u = 1/j, up to u^K."""
    J = list(j_series(K))
    T = [0, 1] + [0] * (K - 1)
    for _ in range(K):
        composed = [0] * (K + 1)
        for c in reversed(J):
            composed = _mul(composed, T, K, mod)
            composed[0] += c
        T = ([0] + composed[:K])
        if mod is not None:
            T = [c % mod for c in T]
    return T


@dataclass(frozen=True)
class TatePeriod:
    q: int
    valuation: int
    unit: int
    precision: int

    def value(self) -> int:
        """theta mod q^precision."""
        return self.unit * self.q ** self.valuation % self.q ** self.precision

    def format(self) -> str:
        return f"{self.unit} * {self.q}^{self.valuation} + O({self.q}^{self.precision})"

    __str__ = format


def inverse_j(E: CurveQ, q: int, precision: int) -> tuple[int, int]:
    """(1/j_E mod q^precision, -v_q(j_E)) at a prime of multiplicative reduction."""
    m = E.minimal
    c4, disc = m.c4, m.disc
    if c4 % q == 0:
        raise HypothesisViolation(f"{E} does not have multiplicative reduction at {q}")
    mod = q ** precision
    return disc * pow(c4 ** 3, -1, mod) % mod, val(disc, q, abs(disc).bit_length())


def tate_period(E: CurveQ, q: int, precision: int | None = None) -> TatePeriod:
    precision = precision or config.TATE_PRECISION
    if reduction_type(E, q) not in (Reduction.SPLIT, Reduction.NONSPLIT):
        raise HypothesisViolation(f"{E} does not have multiplicative reduction at {q}")
    u, m = inverse_j(E, q, precision)
    if m >= precision:
        raise PrecisionError(f"precision {precision} does not exceed v(theta) = {m}")
    mod = q ** precision
    K = -(-precision // m) + 1
    series = period_series(K, mod)
    theta, power = 0, 1
    for c in series:
        theta = (theta + c * power) % mod
        power = power * u % mod
    if val(theta, q, precision) != m:
        raise PrecisionError(f"period valuation {val(theta, q, precision)} differs from {m}")
    unit = theta // q ** m % q ** (precision - m)
    logger.debug("Tate period of %s at %d: %d * %d^%d", E, q, unit, q, m)
    return TatePeriod(q, m, unit, precision)


def inverse_j_from_period(period: TatePeriod) -> int:
    """1/j(theta) mod q^precision, computed as theta / (theta j(theta))."""
    q, m, P = period.q, period.valuation, period.precision
    mod = q ** P
    K = -(-P // m) + 1
    theta = period.value()
    J = j_series(K)
    total, power = 0, 1
    for c in J:
        total = (total + c * power) % mod
        power = power * theta % mod
    return theta * pow(total, -1, mod) % mod


def mult_params(E: CurveQ, q: int, p: int, n: int) -> tuple[int, int, int]:
    """(eps, b1, b2) of the decomposition and inertia groups mod p^n at q."""
    if p == q:
        raise InvalidParameterError(f"p={p} must differ from the bad prime")
    red = reduction_type(E, q)
    if red not in (Reduction.SPLIT, Reduction.NONSPLIT):
        raise HypothesisViolation(f"{E} has {red.value} reduction at {q}")
    eps = 1 if red is Reduction.SPLIT else -1
    _, m = inverse_j(E, q, 1)
    b2 = min(n, val(m, p, n))
    w = tate_period(E, q, m + 1).unit % q
    b1 = 0
    for s in range(b2, 0, -1):
        if pow(w, (q - 1) // gcd(p ** s, q - 1), q) == 1:
            b1 = s
            break
    return eps, b1, b2
