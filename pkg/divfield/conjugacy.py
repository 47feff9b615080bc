"""
Conjugacy classes of GL2(Z/p^n), p odd.

Eight kinds of classes, each with a fixed representative:

    I(a)              [[a, 0], [0, a]]
    I'_{mu,nu}(a, b)  [[a, b p^nu], [p^mu, a]]     1 <= mu < nu < n
    I'_{mu}(a)        [[a, 0], [p^mu, a]]          1 <= mu < n
    I-_{mu}(a, b)     [[a, b p^mu], [p^mu, a]]     b a non-square unit
    I+_{mu}(a, b)     [[a, b p^mu], [p^mu, a]]     b a square unit
    II(a, b)          [[a, b p], [1, a]]           b in Z/p^(n-1)
    III(a, b)         [[a, 0], [0, b]]             a != b mod p, a < b
    IV(a, b)          [[0, a], [1, b]]             b^2 + 4a a non-square unit

A class is determined by the characteristic polynomial together with the
scalar depth mu, which is how classify() recovers the label.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum
import logging
import re
from typing import Iterator

from .errors import InvalidParameterError, NonUnitError
from .mat2 import Mat2, crt_split, mu_depth, prime_power
from .padic import PValued, legendre, sqrt_mod, val

logger = logging.getLogger(__name__)


class Kind(str, Enum):
    I = "I"
    I_PRIME_MN = "I'mn"
    I_PRIME_M = "I'm"
    I_MINUS = "I-"
    I_PLUS = "I+"
    II = "II"
    III = "III"
    IV = "IV"


_LABEL_RE = re.compile(
    r"^\s*(?P<kind>I'|I-|I\+|IV|III|II|I)"
    r"(?:_\{(?P<mu>\d+)(?:,(?P<nu>\d+))?\})?"
    r"\((?P<alpha>\d+)(?:,(?P<beta>\d+))?\)"
    r"\s+mod\s+(?P<mod>\d+)\s*$"
)


@dataclass(frozen=True)
class ClassLabel:
    kind: Kind
    p: int
    n: int
    alpha: int
    beta: int | None = None
    mu: int | None = None
    nu: int | None = None

    @property
    def modulus(self) -> int:
        return self.p ** self.n

    def format(self) -> str:
        k, a, b = self.kind, self.alpha, self.beta
        if k is Kind.I:
            body = f"I({a})"
        elif k is Kind.I_PRIME_MN:
            body = f"I'_{{{self.mu},{self.nu}}}({a},{b})"
        elif k is Kind.I_PRIME_M:
            body = f"I'_{{{self.mu}}}({a})"
        elif k in (Kind.I_MINUS, Kind.I_PLUS):
            body = f"{k.value}_{{{self.mu}}}({a},{b})"
        else:
            body = f"{k.value}({a},{b})"
        return f"{body} mod {self.modulus}"

    __str__ = format

    @classmethod
    def parse(cls, text: str) -> "ClassLabel":
        match = _LABEL_RE.match(text)
        if not match:
            raise ValueError(f"cannot parse class label {text!r}")
        g = match.groupdict()
        p, n = prime_power(int(g["mod"]))
        mu = int(g["mu"]) if g["mu"] else None
        nu = int(g["nu"]) if g["nu"] else None
        beta = int(g["beta"]) if g["beta"] else None
        kind = {
            "I": Kind.I, "II": Kind.II, "III": Kind.III, "IV": Kind.IV,
            "I-": Kind.I_MINUS, "I+": Kind.I_PLUS,
            "I'": Kind.I_PRIME_MN if nu is not None else Kind.I_PRIME_M,
        }[g["kind"]]
        label = cls(kind, p, n, int(g["alpha"]), beta, mu, nu)
        validate(label)
        return label

    def to_json(self) -> dict:
        out = asdict(self)
        out["kind"] = self.kind.value
        return {k: v for k, v in out.items() if v is not None}


def _unit(x: int, p: int) -> bool:
    return x % p != 0


def validate(label: ClassLabel) -> None:
    """Raise InvalidParameterError unless the parameters lie in range."""
    p, n, k = label.p, label.n, label.kind
    a, b, mu, nu = label.alpha, label.beta, label.mu, label.nu
    m = p ** n
    ok = 0 <= a < m and _unit(a, p)
    if k is Kind.I:
        pass
    elif k is Kind.I_PRIME_MN:
        ok = ok and mu is not None and nu is not None and 1 <= mu < nu < n
        ok = ok and b is not None and 0 <= b < p ** (n - nu) and _unit(b, p)
    elif k is Kind.I_PRIME_M:
        ok = ok and mu is not None and 1 <= mu < n
    elif k in (Kind.I_MINUS, Kind.I_PLUS):
        ok = ok and mu is not None and 1 <= mu < n
        ok = ok and b is not None and 0 <= b < p ** (n - mu) and _unit(b, p)
        want = 1 if k is Kind.I_PLUS else -1
        ok = ok and legendre(b, p) == want
    elif k is Kind.II:
        ok = ok and b is not None and 0 <= b < p ** (n - 1)
    elif k is Kind.III:
        ok = (b is not None and 0 <= a < b < m and _unit(a, p) and _unit(b, p)
              and (a - b) % p != 0)
    elif k is Kind.IV:
        ok = ok and b is not None and 0 <= b < m and legendre(b * b + 4 * a, p) == -1
    if not ok:
        raise InvalidParameterError(f"parameters out of range for {k.value}: {label}")


def representative(label: ClassLabel) -> Mat2:
    validate(label)
    p, m, k = label.p, label.modulus, label.kind
    a, b = label.alpha, label.beta
    if k is Kind.I:
        return Mat2(a, 0, 0, a, m)
    if k is Kind.I_PRIME_MN:
        return Mat2(a, b * p ** label.nu, p ** label.mu, a, m)
    if k is Kind.I_PRIME_M:
        return Mat2(a, 0, p ** label.mu, a, m)
    if k in (Kind.I_MINUS, Kind.I_PLUS):
        s = p ** label.mu
        return Mat2(a, b * s, s, a, m)
    if k is Kind.II:
        return Mat2(a, b * p, 1, a, m)
    if k is Kind.III:
        return Mat2(a, 0, 0, b, m)
    return Mat2(0, a, 1, b, m)


def class_size(label: ClassLabel) -> int:
    p, n, k = label.p, label.n, label.kind
    if k is Kind.I:
        return 1
    if k in (Kind.I_PRIME_MN, Kind.I_PRIME_M):
        return (p * p - 1) * p ** (2 * (n - label.mu) - 2)
    if k is Kind.I_MINUS:
        return (p - 1) * p ** (2 * (n - label.mu) - 1)
    if k is Kind.I_PLUS:
        return (p + 1) * p ** (2 * (n - label.mu) - 1)
    if k is Kind.II:
        return (p * p - 1) * p ** (2 * n - 2)
    if k is Kind.III:
        return (p + 1) * p ** (2 * n - 1)
    return (p - 1) * p ** (2 * n - 1)


def classify(g: Mat2) -> ClassLabel:
    """Label of the conjugacy class of an invertible g over Z/p^n."""
    p, n = prime_power(g.modulus)
    if p == 2:
        raise InvalidParameterError("even moduli are not supported")
    if not g.is_invertible():
        raise NonUnitError(f"{g.format()} is not invertible")
    m = g.modulus
    a, b, c, d = g.entries()
    sigma = (a + d) % m
    tau = g.det()
    delta = (sigma * sigma - 4 * tau) % m
    mu = mu_depth(g)
    if mu >= n:
        return ClassLabel(Kind.I, p, n, a)
    alpha = sigma * pow(2, -1, m) % m

    if mu > 0:
        s = p ** mu
        rel = p ** (n - mu)
        dh = (((a - d) % m // s) ** 2 + 4 * (b // s) * (c // s)) % rel
        k = val(dh, p, n - mu)
        nu = mu + k
        if nu >= n:
            return ClassLabel(Kind.I_PRIME_M, p, n, alpha, mu=mu)
        if nu == mu:
            beta = dh * pow(4, -1, rel) % rel
            kind = Kind.I_PLUS if legendre(beta, p) == 1 else Kind.I_MINUS
            return ClassLabel(kind, p, n, alpha, beta, mu=mu)
        top = p ** (n - nu)
        beta = (dh // p ** k) * pow(4, -1, top) % top
        return ClassLabel(Kind.I_PRIME_MN, p, n, alpha, beta, mu=mu, nu=nu)

    if delta % p == 0:
        if n == 1:
            return ClassLabel(Kind.II, p, n, alpha, 0)
        top = p ** (n - 1)
        beta = (delta // p) * pow(4, -1, top) % top
        return ClassLabel(Kind.II, p, n, alpha, beta)

    root = sqrt_mod(PValued(delta, p, n))
    if root is None:
        return ClassLabel(Kind.IV, p, n, (-tau) % m, sigma)
    half = pow(2, -1, m)
    x = (sigma + root.value) * half % m
    y = (sigma - root.value) * half % m
    lo, hi = sorted((x, y))
    return ClassLabel(Kind.III, p, n, lo, hi)


def classify_N(g: Mat2) -> tuple[ClassLabel, ...]:
    """Per-prime-power labels of g over Z/N, in increasing p."""
    return tuple(classify(part) for part in crt_split(g))


def format_product(labels: tuple[ClassLabel, ...]) -> str:
    return " x ".join(label.format() for label in labels)


def _units(p: int, k: int) -> Iterator[int]:
    return (x for x in range(p ** k) if x % p)


def enumerate_classes(p: int, n: int) -> Iterator[ClassLabel]:
    """Every class of GL2(Z/p^n) exactly once."""
    m = p ** n
    for a in _units(p, n):
        yield ClassLabel(Kind.I, p, n, a)
    for mu in range(1, n):
        for nu in range(mu + 1, n):
            for a in _units(p, n):
                for b in _units(p, n - nu):
                    yield ClassLabel(Kind.I_PRIME_MN, p, n, a, b, mu=mu, nu=nu)
        for a in _units(p, n):
            yield ClassLabel(Kind.I_PRIME_M, p, n, a, mu=mu)
        for a in _units(p, n):
            for b in _units(p, n - mu):
                kind = Kind.I_PLUS if legendre(b, p) == 1 else Kind.I_MINUS
                yield ClassLabel(kind, p, n, a, b, mu=mu)
    for a in _units(p, n):
        for b in range(p ** (n - 1)):
            yield ClassLabel(Kind.II, p, n, a, b)
    for a in _units(p, n):
        for b in _units(p, n):
            if a < b and (a - b) % p:
                yield ClassLabel(Kind.III, p, n, a, b)
    for a in _units(p, n):
        for b in range(m):
            if legendre(b * b + 4 * a, p) == -1:
                yield ClassLabel(Kind.IV, p, n, a, b)


def class_count(p: int, n: int) -> dict[Kind, int]:
    counts: dict[Kind, int] = {}
    for label in enumerate_classes(p, n):
        counts[label.kind] = counts.get(label.kind, 0) + 1
    return counts


def group_order(p: int, n: int) -> int:
    """|GL2(Z/p^n)|."""
    return (p - 1) ** 2 * (p + 1) * p ** (4 * n - 3)


def coset_space_size(p: int, n: int) -> int:
    """Number of primitive vectors in (Z/p^n)^2."""
    return (p * p - 1) * p ** (2 * n - 2)
