"""
Factorization types of rational primes in K = Q(E[N])^Gamma and what they
add up to: Euler factors, Dedekind zeta coefficients, type distributions
over conjugacy classes, minimal residual degrees and Chebotarev sampling.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod, sqrt
import logging
import sys

import pandas as pd
from sympy import primerange
from tqdm import tqdm

from . import config
from .cache import FrobeniusCache
from .conjugacy import class_size, enumerate_classes, group_order
from .dct import DCType, mult_dct, ord_dct, tensor, tensor_all, to_factorization, unramified_dct, unramified_dct_N
from .elliptic import CurveQ, Reduction, is_semistable, reduction_type, unit_root
from .errors import BudgetExceeded, HypothesisViolation, InvalidParameterError
from .mat2 import prime_power_factors
from .tate import mult_params
from .torsion import FrobeniusData, frobenius_data, frobenius_matrix, matrix_from_data

logger = logging.getLogger(__name__)

CACHE_BATCH = 256


def degree(N: int) -> int:
    """[K:Q] = |W| = N^2 prod(1 - p^-2)."""
    return prod((p * p - 1) * p ** (2 * n - 2) for p, n in prime_power_factors(N))


def _check_modulus(N: int) -> None:
    if N < 3 or N % 2 == 0:
        raise InvalidParameterError(f"N must be odd and at least 3, got {N}")


def _unramified(E: CurveQ, q: int, N: int, data: FrobeniusData | None) -> DCType:
    if data is not None:
        return unramified_dct_N(matrix_from_data(data.a_q, q, data.mu, N))
    return unramified_dct_N(frobenius_matrix(E, q, N))


def factorization_type(E: CurveQ, N: int, q: int, data: FrobeniusData | None = None) -> DCType:
    """The double coset type describing how q factors in K."""
    _check_modulus(N)
    red = reduction_type(E, q)
    if red is Reduction.ADDITIVE:
        raise HypothesisViolation(f"{E} has additive reduction at {q}")

    if red is not Reduction.GOOD:
        if N % q == 0:
            raise HypothesisViolation(f"bad prime {q} divides N={N}")
        parts = []
        for p, n in prime_power_factors(N):
            eps, b1, b2 = mult_params(E, q, p, n)
            parts.append(mult_dct(p, n, q * eps % p ** n, eps, b1, b2))
        return tensor_all(parts)

    if N % q:
        return _unramified(E, q, N, data)

    p = q
    n = dict(prime_power_factors(N))[p]
    alpha = unit_root(E, p, n)
    ordinary = ord_dct(p, n, alpha.value)
    rest = N // p ** n
    if rest == 1:
        return ordinary
    return tensor(_unramified(E, q, rest, data), ordinary)


def euler_factor(d: DCType, q: int, T: int) -> list[int]:
    """[1, z_q, z_q^2, ..., z_q^T] from prod (1 - x^f)^-a over the terms."""
    coeffs = [1] + [0] * T
    exponents: dict[int, int] = defaultdict(int)
    for count, e, f in to_factorization(d):
        exponents[f] += count
    for f, a in sorted(exponents.items()):
        # (1 - x^f)^-a = sum_k C(a + k - 1, k) x^(f k)
        series = [0] * (T + 1)
        for k in range(T // f + 1):
            series[f * k] = comb(a + k - 1, k)
        coeffs = [sum(coeffs[i] * series[t - i] for i in range(t + 1)) for t in range(T + 1)]
    return coeffs


def euler_product(factors: dict[int, list[int]], B: int) -> dict[int, int]:
    """Nonzero z_n, n <= B, of the product of the given Euler factors."""
    table = {1: 1}
    for q in sorted(factors):
        coeffs = factors[q]
        nxt: dict[int, int] = defaultdict(int)
        for n, z in table.items():
            power = 1
            for c in coeffs:
                if n * power > B:
                    break
                if c:
                    nxt[n * power] += z * c
                power *= q
        table = dict(nxt)
    return dict(sorted(table.items()))


def _log_floor(q: int, B: int) -> int:
    T, power = 0, q
    while power <= B:
        T += 1
        power *= q
    return T


@dataclass
class ZetaTable:
    A: int
    B: int
    coefficients: dict[int, int]
    types: dict[int, DCType] = field(default_factory=dict)

    def to_json(self) -> dict[str, int]:
        return {str(n): z for n, z in self.coefficients.items()}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"n": list(self.coefficients), "z_n": [str(z) for z in self.coefficients.values()]})


def _progress(iterable, total: int, desc: str, quiet: bool):
    return tqdm(iterable, total=total, desc=desc, file=sys.stderr,
                disable=quiet or not sys.stderr.isatty())


def zeta_coefficients(E: CurveQ, N: int, A: int, B: int, *,
                      assume_maximal_image: bool = False,
                      threads: int | None = None,
                      cache: FrobeniusCache | None = None,
                      quiet: bool = True) -> ZetaTable:
    """Nonzero coefficients z_n, A <= n <= B, of the Dedekind zeta function of K."""
    _check_modulus(N)
    if not assume_maximal_image:
        raise HypothesisViolation(
            "full image and absence of companion forms must be acknowledged explicitly")
    if not 1 <= A <= B:
        raise InvalidParameterError(f"need 1 <= A <= B, got A={A}, B={B}")
    if B > config.MAX_Q:
        raise BudgetExceeded(f"B={B} is above the point-counting bound {config.MAX_Q}")
    if not is_semistable(E):
        raise HypothesisViolation(f"{E} is not semistable")
    primes = [int(q) for q in primerange(2, B + 1)]

    cached: dict[int, FrobeniusData] = {}
    if cache is not None:
        for q in primes:
            record = cache.get(E, q)
            if record is not None and all(p in record.mu for p, _ in prime_power_factors(N) if p != q):
                cached[q] = record

    def work(q: int) -> tuple[int, DCType, FrobeniusData | None]:
        data = cached.get(q)
        fresh = None
        if data is None and reduction_type(E, q) is Reduction.GOOD:
            data = fresh = frobenius_data(E, q, N)
        return q, factorization_type(E, N, q, data), fresh

    types: dict[int, DCType] = {}
    pending: list[FrobeniusData] = []
    with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
        # results arrive in prime order; only this thread writes the cache
        for q, d, fresh in _progress(pool.map(work, primes), len(primes), "primes", quiet):
            types[q] = d
            if cache is not None and fresh is not None:
                pending.append(fresh)
                if len(pending) >= CACHE_BATCH:
                    cache.put_many(E, pending)
                    pending = []
    if cache is not None:
        cache.put_many(E, pending)
    factors = {q: euler_factor(types[q], q, _log_floor(q, B)) for q in primes}
    table = euler_product(factors, B)
    coefficients = {n: z for n, z in table.items() if n >= A}
    logger.info("zeta of %s, N=%d: %d nonzero coefficients in [%d, %d]", E, N, len(coefficients), A, B)
    return ZetaTable(A, B, coefficients, types)


@dataclass
class TypeDistribution:
    N: int
    masses: dict[DCType, int]
    group_order: int

    def density(self, d: DCType) -> Fraction:
        return Fraction(self.masses.get(d, 0), self.group_order)

    def total(self) -> int:
        return sum(self.masses.values())

    def items(self) -> list[tuple[DCType, int]]:
        return sorted(self.masses.items(), key=lambda kv: kv[0].terms)


@lru_cache(maxsize=None)
def _prime_power_distribution(p: int, n: int) -> tuple[tuple[DCType, int], ...]:
    masses: dict[DCType, int] = defaultdict(int)
    for label in enumerate_classes(p, n):
        masses[unramified_dct(label)] += class_size(label)
    return tuple(masses.items())


def distribution(N: int) -> TypeDistribution:
    """Mass of conjugacy classes of GL2(Z/N) per unramified type."""
    _check_modulus(N)
    combined: dict[DCType, int] = {DCType.unit(): 1}
    order = 1
    for p, n in prime_power_factors(N):
        nxt: dict[DCType, int] = defaultdict(int)
        for d1, m1 in combined.items():
            for d2, m2 in _prime_power_distribution(p, n):
                nxt[tensor(d1, d2)] += m1 * m2
        combined = dict(nxt)
        order *= group_order(p, n)
    dist = TypeDistribution(N, combined, order)
    if dist.total() != order:
        raise HypothesisViolation(f"class masses {dist.total()} do not add up to |G| = {order}")
    return dist


def density_percent(value: Fraction, places: int = 2) -> str:
    scaled = value * 100 * 10 ** places
    rounded = (scaled.numerator * 2 + scaled.denominator) // (2 * scaled.denominator)
    whole, frac = divmod(rounded, 10 ** places)
    return f"{whole}.{frac:0{places}d}%" if places else f"{whole}%"


def distribution_table(dist: TypeDistribution) -> pd.DataFrame:
    rows = [{"type": d.format(), "mass": mass, "density": str(dist.density(d))}
            for d, mass in dist.items()]
    return pd.DataFrame(rows, columns=["type", "mass", "density"])


def min_degree_report(N: int) -> dict[int, Fraction]:
    """Density of primes whose smallest residual degree in K is f."""
    dist = distribution(N)
    report: dict[int, Fraction] = defaultdict(Fraction)
    for d, mass in dist.masses.items():
        report[d.min_degree()] += Fraction(mass, dist.group_order)
    return dict(sorted(report.items()))


def min_degree_table(N: int) -> pd.DataFrame:
    dist = distribution(N)
    masses: dict[int, int] = defaultdict(int)
    for d, mass in dist.masses.items():
        masses[d.min_degree()] += mass
    rows = [{"degree": f, "mass": mass, "density": str(Fraction(mass, dist.group_order))}
            for f, mass in sorted(masses.items())]
    return pd.DataFrame(rows, columns=["degree", "mass", "density"])


def per_prime_report(E: CurveQ, N: int, q: int) -> dict:
    d = factorization_type(E, N, q)
    exponents: dict[int, int] = defaultdict(int)
    for count, _, f in to_factorization(d):
        exponents[f] += count
    return {
        "q": q,
        "reduction": reduction_type(E, q).value,
        "type": d.format(),
        "terms": d.to_json(),
        "primes": d.prime_count(),
        "min_degree": d.min_degree(),
        "euler_factor": [{"f": f, "exponent": a} for f, a in sorted(exponents.items())],
    }


def chebotarev_sample(E: CurveQ, N: int, B: int, *, threads: int | None = None,
                      quiet: bool = True) -> pd.DataFrame:
    """Observed frequency of each type over good primes q <= B, q not dividing N, against its density."""
    _check_modulus(N)
    primes = [int(q) for q in primerange(3, B + 1)
              if N % q and reduction_type(E, int(q)) is Reduction.GOOD]

    def work(q: int) -> DCType:
        return unramified_dct_N(frobenius_matrix(E, q, N))

    with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
        observed = Counter(_progress(pool.map(work, primes), len(primes), "primes", quiet))
    dist = distribution(N)
    total = len(primes)
    rows = []
    for d, mass in dist.items():
        p = float(dist.density(d))
        expected = total * p
        sigma = sqrt(total * p * (1 - p)) if 0 < p < 1 else 0.0
        seen = observed.get(d, 0)
        rows.append({"type": d.format(), "observed": seen, "expected": expected,
                     "density": p, "z": (seen - expected) / sigma if sigma else 0.0})
    unexpected = set(observed) - set(dist.masses)
    if unexpected:
        raise HypothesisViolation(f"types outside the distribution: {sorted(t.format() for t in unexpected)}")
    return pd.DataFrame(rows, columns=["type", "observed", "expected", "density", "z"])
