"""Exact subspace counts and the Gilbert-Varshamov-type certificate for nested pairs.

All quantities are Python integers; nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DomainError, InvalidParams, NonIntegralQuotient
from .field import factor_prime_power


def _exact_div(num: int, den: int, what: str) -> int:
    quo, rem = divmod(num, den)
    if rem:
        raise NonIntegralQuotient(f"{what}: {num} / {den} is not an integer")
    return quo


@lru_cache(maxsize=None)
def n1(w: int, u: int, q: int) -> int:
    """Number of u-dimensional subspaces of F_q^w (Gaussian binomial)."""
    if u == 0:
        return 1
    if u < 0 or u > w:
        return 0
    num = den = 1
    qw, qu = q**w, q**u
    for i in range(u):
        qi = q**i
        num *= qw - qi
        den *= qu - qi
    return _exact_div(num, den, f"N1({w},{u}) over F_{q}")


@lru_cache(maxsize=None)
def n2(w: int, u: int, v: int, q: int) -> int:
    """v-dim subspaces of F_q^w meeting a fixed u-dim subspace trivially.

    Evaluated from the product formula prod(q^w - q^(u+i)) / prod(q^v - q^i).
    A fixed u-dim subspace cannot exist when u > w; that count is 0.
    """
    if v == 0:
        return 1
    if v < 0 or u < 0 or u > w:
        return 0
    num = den = 1
    qw, qv = q**w, q**v
    for i in range(v):
        num *= qw - q ** (u + i)
        den *= qv - q**i
    if num < 0:
        raise NonIntegralQuotient(f"N2({w},{u},{v}) has a negative numerator")
    return _exact_div(num, den, f"N2({w},{u},{v}) over F_{q}")


def n3(w: int, u: int, v: int, a: int, q: int) -> int:
    return n1(u, a, q) * n2(w - a, u - a, v - a, q)


def binom_exact(n: int, m: int) -> int:
    if not 0 <= m <= n:
        raise DomainError(f"binomial C({n},{m}) needs 0 <= m <= n")
    return comb(n, m)


@dataclass(frozen=True)
class GvParams:
    q: int
    n: int
    k1: int
    k2: int
    t: int
    d: int

    def __post_init__(self):
        check_gv_params(self.q, self.n, self.k1, self.k2, self.t)
        if not self.t <= self.d <= self.n:
            raise InvalidParams(f"need t <= d <= n, got t={self.t}, d={self.d}, n={self.n}")


def check_gv_params(q: int, n: int, k1: int, k2: int, t: int) -> None:
    factor_prime_power(q)
    if not 0 <= k2 < k1 <= n:
        raise InvalidParams(f"need 0 <= k2 < k1 <= n, got n={n}, k1={k1}, k2={k2}")
    if not 1 <= t <= k1 - k2 - 1:
        raise InvalidParams(f"need 1 <= t <= k1 - k2 - 1 = {k1 - k2 - 1}, got t={t}")


@dataclass(frozen=True)
class BoundReport:
    params: GvParams
    lhs: int
    rhs: int

    @property
    def certified(self) -> bool:
        return self.lhs < self.rhs

    def to_json(self) -> dict:
        p = self.params
        return {
            "q": p.q, "n": p.n, "k1": p.k1, "k2": p.k2, "t": p.t, "d": p.d,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "certified": self.certified,
        }


def gv_rhs(q: int, n: int, k1: int, k2: int) -> int:
    return n1(n, k2, q) * n1(n - k2, k1 - k2, q)


def gv_lhs(q: int, n: int, k1: int, k2: int, t: int, d: int) -> int:
    total = 0
    for b in range(t + 1, k1 - k2 + 1):
        # an empty inner range (negative upper limit) contributes nothing
        for a in range(min(d - b, k1 - b, k2) + 1):
            total += n1(d, a, q) * n2(n - a, d - a, k2 - a, q) * n3(n - k2, d - a, k1 - k2, b, q)
    return comb(n, d) * total


def gv_certify(p: GvParams) -> BoundReport:
    """Both sides of the counting inequality; certified iff lhs < rhs."""
    return BoundReport(p, gv_lhs(p.q, p.n, p.k1, p.k2, p.t, p.d), gv_rhs(p.q, p.n, p.k1, p.k2))


@dataclass(frozen=True)
class MaxDResult:
    max_d: int | None
    reports: tuple[BoundReport, ...]

    @property
    def certified_set(self) -> list[bool]:
        """Verdicts for d = t, t+1, ..., n."""
        return [r.certified for r in self.reports]

    def to_json(self) -> dict:
        return {
            "max_d": self.max_d,
            "certified": {str(r.params.d): r.certified for r in self.reports},
            "reports": [r.to_json() for r in self.reports],
        }


def gv_max_d(q: int, n: int, k1: int, k2: int, t: int) -> MaxDResult:
    """Certificate for every d in [t, n]; no monotonicity in d is assumed."""
    check_gv_params(q, n, k1, k2, t)
    reports = tuple(gv_certify(GvParams(q, n, k1, k2, t, d)) for d in range(t, n + 1))
    certified = [r.params.d for r in reports if r.certified]
    return MaxDResult(max(certified) if certified else None, reports)
