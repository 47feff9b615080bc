"""
Frobenius on torsion: division polynomials over F_q, the scalar depth
mu_l(q) of Frobenius on E[l^infinity], the Frobenius conjugacy class mod N,
integral Frobenius matrices, and an explicit-basis oracle over extension fields.

Division polynomials use the normalization f_n = psi_n for odd n and
f_n = psi_n / psi_2 for even n, so every f_n lies in F_q[x] and
psi_2^2 = F = 4x^3 + b2 x^2 + 2 b4 x + b6.
"""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
import random

from sympy import divisors, factorint

from . import config
from .conjugacy import ClassLabel, classify, classify_N
from .elliptic import CurveQ, _check_good, count_points_ext, frobenius_trace
from .errors import BudgetExceeded, InvalidParameterError, OracleMismatch
from .finite_field import FiniteField, FqElem, coefficients, poly, poly_ring, x_power_mod
from .mat2 import Mat2, crt_join, group_exponent, prime_power, prime_power_factors
from .padic import val

logger = logging.getLogger(__name__)


class DivisionPolynomials:
    """Lazily computed f_n over F_q for one curve."""

    def __init__(self, curve: CurveQ, q: int):
        self.curve = curve
        self.q = q
        self.ring = R = poly_ring(q)
        b2, b4, b6, b8 = curve.b2, curve.b4, curve.b6, curve.b8
        self.x = poly(R, [0, 1])
        self.F = poly(R, [b6, 2 * b4, b2, 4])
        self._cache = {
            0: poly(R, []),
            1: poly(R, [1]),
            2: poly(R, [1]),
            3: poly(R, [b8, 3 * b6, 3 * b4, b2, 3]),
            4: poly(R, [b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, 2]),
        }

    def __getitem__(self, n: int):
        if n < 0:
            raise InvalidParameterError(f"division polynomial index must be >= 0, got {n}")
        if n not in self._cache:
            m = n // 2
            F2 = self.F * self.F
            if n % 2:
                if m % 2 == 0:
                    result = F2 * self[m + 2] * self[m] ** 3 - self[m - 1] * self[m + 1] ** 3
                else:
                    result = self[m + 2] * self[m] ** 3 - F2 * self[m - 1] * self[m + 1] ** 3
            else:
                result = self[m] * (self[m + 2] * self[m - 1] ** 2 - self[m - 2] * self[m + 1] ** 2)
            self._cache[n] = result
        return self._cache[n]

    def torsion_poly(self, n: int):
        """Vanishes exactly on the x-coordinates of E[n] minus O."""
        return self[n] if n % 2 else self.F * self[n]

    def multiple_x(self, s: int):
        """(num, den) with x([s]P) = x - num/den."""
        if s % 2:
            return self.F * self[s - 1] * self[s + 1], self[s] ** 2
        return self[s - 1] * self[s + 1], self.F * self[s] ** 2


def _scalar_candidates(a: int, q: int, ell: int, j: int) -> list[int]:
    modulus = ell ** j
    if ell % 2:
        s = a * pow(2, -1, modulus) % modulus
        return [s] if (s * s - q) % modulus == 0 else []
    return [s for s in range(modulus)
            if (2 * s - a) % modulus == 0 and (s * s - q) % modulus == 0]


def acts_as_scalar(E: CurveQ, q: int, ell: int, j: int) -> bool:
    """Whether Frobenius acts on E[ell^j] as multiplication by an integer."""
    m = _check_good(E, q)
    a = frobenius_trace(E, q)
    candidates = _scalar_candidates(a, q, ell, j)
    if not candidates:
        return False
    dp = DivisionPolynomials(m, q)
    h = dp.torsion_poly(ell ** j)
    xq = x_power_mod(dp.ring, q, h)
    for s in candidates:
        num, den = dp.multiple_x(s)
        if (xq * den - dp.x * den + num) % h == poly(dp.ring, []):
            return True
    return False


def frobenius_mu(E: CurveQ, q: int, ell: int, cap: int) -> int:
    """Largest j <= cap with Frobenius scalar on E[ell^j]."""
    if ell == q:
        raise InvalidParameterError(f"l={ell} must differ from q")
    _check_good(E, q)
    a = frobenius_trace(E, q)
    bound = min(cap, val(a * a - 4 * q, ell, 2 * cap + 1) // 2)
    mu = 0
    while mu < bound and acts_as_scalar(E, q, ell, mu + 1):
        mu += 1
    logger.debug("mu_%d(%d) = %d on %s", ell, q, mu, E)
    return mu


def frobenius_matrix(E: CurveQ, q: int, N: int) -> Mat2:
    """
    A matrix mod N in the conjugacy class of Frobenius at q: per p^n || N
    the companion-like [[a/2, p^mu], [p^mu D/4, a/2]] with a^2 - 4q = p^2mu D.
    """
    if N % 2 == 0:
        raise InvalidParameterError("N must be odd")
    m = _check_good(E, q)
    if N % q == 0:
        raise InvalidParameterError(f"q={q} divides N={N}")
    mu = {p: frobenius_mu(m, q, p, n) for p, n in prime_power_factors(N)}
    return matrix_from_data(frobenius_trace(m, q), q, mu, N)


def matrix_from_data(a: int, q: int, mu: dict[int, int], N: int) -> Mat2:
    """The Frobenius matrix mod N from a_q and the scalar depths mu_p, p | N."""
    disc = a * a - 4 * q
    parts = []
    for p, n in prime_power_factors(N):
        mod = p ** n
        half = a * pow(2, -1, mod)
        mu_p = min(mu[p], n)
        if mu_p >= n:
            parts.append(Mat2.scalar(half, mod))
            continue
        s = p ** mu_p
        rest = disc // (s * s)
        parts.append(Mat2(half, s, s * rest * pow(4, -1, mod), half, mod))
    return parts[0] if len(parts) == 1 else crt_join(parts)


def frobenius_class(E: CurveQ, q: int, p: int, n: int) -> ClassLabel:
    return classify(frobenius_matrix(E, q, p ** n))


def frobenius_class_N(E: CurveQ, q: int, N: int) -> tuple[ClassLabel, ...]:
    return classify_N(frobenius_matrix(E, q, N))


@dataclass
class FrobeniusData:
    q: int
    a_q: int
    mu: dict[int, int] = field(default_factory=dict)
    disc: int | None = None
    b_q: int | None = None
    delta: int | None = None

    def to_json(self) -> dict:
        out = {"q": self.q, "a_q": self.a_q, "mu": {str(k): v for k, v in sorted(self.mu.items())}}
        if self.disc is not None:
            out.update(delta_q=self.disc, b_q=self.b_q, delta=self.delta)
        return out

    @classmethod
    def from_json(cls, record: dict) -> "FrobeniusData":
        return cls(int(record["q"]), int(record["a_q"]),
                   {int(k): int(v) for k, v in record.get("mu", {}).items()},
                   record.get("delta_q"), record.get("b_q"), record.get("delta"))


def _fundamental_split(disc: int) -> tuple[int, int]:
    """(bhat, d) with disc = bhat^2 d and d a fundamental discriminant."""
    bhat, core = 1, -1 if disc < 0 else 1
    for ell, e in factorint(abs(disc)).items():
        bhat *= ell ** (e // 2)
        core *= ell ** (e % 2)
    if core % 4 != 1:
        core *= 4
        bhat //= 2
    return bhat, core


def delta_q(E: CurveQ, q: int) -> tuple[int, int, int]:
    """(Delta_q, b_q, delta_q): discriminant of End(E/F_q), conductor of Z[pi] in it, parity."""
    m = _check_good(E, q)
    a = frobenius_trace(E, q)
    disc = a * a - 4 * q
    bhat, _ = _fundamental_split(disc)
    if a % q == 0:
        b = bhat
    else:
        b = 1
        for ell, e in factorint(bhat).items():
            b *= ell ** frobenius_mu(m, q, ell, e)
    D = disc // (b * b)
    return D, b, D % 4


def integral_frobenius_entries(E: CurveQ, q: int) -> tuple[int, int, int, int]:
    """Integral matrix [[(a + b d)/2, b], [b (D - d)/4, (a - b d)/2]] with trace a_q and determinant q."""
    a = frobenius_trace(E, q)
    D, b, d = delta_q(E, q)
    return (a + b * d) // 2, b, b * (D - d) // 4, (a - b * d) // 2


def integral_frobenius_matrix(E: CurveQ, q: int, N: int) -> Mat2:
    return Mat2(*integral_frobenius_entries(E, q), N)


def frobenius_data(E: CurveQ, q: int, N: int, with_delta: bool = False) -> FrobeniusData:
    m = _check_good(E, q)
    a = frobenius_trace(m, q)
    disc = a * a - 4 * q
    # uncapped depths, so one record serves every modulus
    mu = {p: frobenius_mu(m, q, p, val(disc, p, disc.bit_length()) // 2)
          for p, _ in prime_power_factors(N) if p != q}
    data = FrobeniusData(q, a, mu)
    if with_delta:
        data.disc, data.b_q, data.delta = delta_q(m, q)
    return data


# explicit torsion bases over F_{q^d}

Point = tuple[FqElem, FqElem] | None


class _ExtCurve:
    """Affine group law on E(F_{q^d})."""

    def __init__(self, curve: CurveQ, K: FiniteField):
        self.K = K
        self.a1, self.a2, self.a3, self.a4, self.a6 = (K(c) for c in curve.coefficients)
        self.curve = curve

    def neg(self, P: Point) -> Point:
        if P is None:
            return None
        x, y = P
        return x, -y - self.a1 * x - self.a3

    def add(self, P: Point, Q: Point) -> Point:
        if P is None:
            return Q
        if Q is None:
            return P
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return None
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - (y1 - lam * x1) - a3
        return x3, y3

    def mul(self, k: int, P: Point) -> Point:
        if k < 0:
            return self.mul(-k, self.neg(P))
        result: Point = None
        while k:
            if k & 1:
                result = self.add(result, P)
            P = self.add(P, P)
            k >>= 1
        return result

    def frobenius(self, P: Point) -> Point:
        if P is None:
            return None
        q = self.K.q
        return P[0] ** q, P[1] ** q

    def random_point(self, rng: random.Random) -> Point:
        K = self.K
        for _ in range(config.BASIS_RETRIES):
            x = K.random(rng)
            rhs = 4 * x * x * x + K(self.curve.b2) * x * x + K(2 * self.curve.b4) * x + K(self.curve.b6)
            root = rhs.sqrt(rng)
            if root is not None:
                return x, (root - self.a1 * x - self.a3) / 2
        raise BudgetExceeded(f"no point found on {self.curve} over {K}")

    def ell_order(self, P: Point, ell: int) -> int:
        e = 0
        while P is not None:
            P = self.mul(ell, P)
            e += 1
        return e


def _key(P: Point):
    if P is None:
        return None
    return tuple(coefficients(P[0].value)), tuple(coefficients(P[1].value))


def _sylow_basis(C: _ExtCurve, ell: int, k: int, cof: int, rng: random.Random):
    """(G1, e1, G2, e2): the ell-Sylow subgroup is <G1> + <G2>, e1 >= e2 its invariants."""
    G1, e1 = None, 0
    for _ in range(config.BASIS_RETRIES):
        S = C.mul(cof, C.random_point(rng))
        e = C.ell_order(S, ell)
        if e > e1:
            G1, e1 = S, e
        if e1 == k:
            return G1, e1, None, 0
        multiples = {}
        P = None
        for c in range(ell ** e1):
            multiples[_key(P)] = c
            P = C.add(P, G1)
        # smallest t with ell^t S in <G1>
        t, T = 0, S
        while _key(T) not in multiples:
            T = C.mul(ell, T)
            t += 1
        c = multiples[_key(T)]
        if c % ell ** t:
            continue
        G2 = C.add(S, C.neg(C.mul(c // ell ** t, G1)))
        if e1 + t == k:
            return G1, e1, G2, t
    raise BudgetExceeded(f"no basis of the {ell}-part found over {C.K}")


def frobenius_matrix_oracle(E: CurveQ, q: int, L: int, max_degree: int | None = None,
                            seed: int | None = None) -> Mat2:
    """Matrix of Frobenius on an explicit basis of E[L], found over the smallest F_{q^d} containing it."""
    ell, j = prime_power(L)
    if ell == q or q == 2:
        raise InvalidParameterError(f"need odd q different from {ell}")
    m = _check_good(E, q)
    a = frobenius_trace(m, q)
    rng = random.Random(config.SEED if seed is None else seed)
    dp = DivisionPolynomials(m, q)
    h = dp.torsion_poly(L)
    for d in divisors(group_exponent(L)):
        if max_degree is not None and d > max_degree:
            break
        total = count_points_ext(a, q, d)
        if total % (L * L):
            continue
        xq = dp.x % h
        for _ in range(d):
            xq = dp.ring.powmod(xq, q, h)
        if xq != dp.x % h:
            continue
        k = val(total, ell, total.bit_length())
        cof = total // ell ** k
        C = _ExtCurve(m, FiniteField(q, d))
        G1, e1, G2, e2 = _sylow_basis(C, ell, k, cof, rng)
        if min(e1, e2) < j:
            continue
        B1 = C.mul(ell ** (e1 - j), G1)
        B2 = C.mul(ell ** (e2 - j), G2)
        table = {}
        for u in range(L):
            for v in range(L):
                table[_key(C.add(C.mul(u, B1), C.mul(v, B2)))] = (u, v)
        try:
            fa, fc = table[_key(C.frobenius(B1))]
            fb, fd = table[_key(C.frobenius(B2))]
        except KeyError as exc:
            raise OracleMismatch("Frobenius image left the torsion basis span") from exc
        g = Mat2(fa, fb, fc, fd, L)
        logger.debug("Frobenius at %d on E[%d] over degree %d: %s", q, L, d, g)
        return g
    raise BudgetExceeded(f"E[{L}] not found over extensions of F_{q} of degree <= {max_degree}")
