"""Linear ramp secret sharing built from a nested pair C2 <= C1.

A secret s in F_q^l (l = k1 - k2) is dealt as x = s W + r G2 with r uniform,
where the rows of W complete a basis of C2 to one of C1.  Share i is x_i.
Leakage is measured in units of log q (one field symbol).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, log
from typing import Sequence

import numpy as np

from . import config
from .codes import CoordSet, NestedPair, rghw, dual_pair
from .errors import Ambiguous, BudgetExceeded, DegeneratePair, Inconsistent, InvalidT, LengthMismatch, NoSolution
from .linalg import MatrixFq, kernel_basis, rank_rows, solve_affine


@dataclass(frozen=True)
class RampScheme:
    pair: NestedPair
    W: MatrixFq

    @property
    def field(self):
        return self.pair.field

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def l(self) -> int:
        return self.W.rows

    @property
    def encoder(self) -> MatrixFq:
        """[W; G2], the k1 x n matrix mapping (s, r) to the share vector."""
        return self.W.stack(self.pair.C2.G)


def scheme_from_pair(P: NestedPair) -> RampScheme:
    """W = rows of G1 whose pivots are not pivots of G2."""
    if P.k1 == P.k2:
        raise DegeneratePair("k1 = k2 leaves no room for a secret")
    taken = set(P.C2.pivots)
    rows = [r for r, piv in zip(P.C1.G.entries, P.C1.pivots) if piv not in taken]
    W = MatrixFq(P.field, len(rows), P.n, tuple(rows))
    if len(rows) != P.k1 - P.k2 or rank_rows(P.field, W.stack(P.C2.G).entries, P.n) != P.k1:
        raise AssertionError("complement basis does not span C1 over C2")
    return RampScheme(P, W)


def deal(S: RampScheme, secret: Sequence[int], seed=None) -> tuple[int, ...]:
    if len(secret) != S.l:
        raise LengthMismatch(f"secret has length {len(secret)}, scheme expects {S.l}")
    for a in secret:
        S.field.check(a)
    rng = np.random.default_rng(seed)
    r = rng.integers(0, S.field.q, size=S.pair.k2).tolist()
    return S.encoder.vec_mul(list(secret) + r)


def reconstruct(S: RampScheme, A: CoordSet, values: Sequence[int]) -> tuple[int, ...]:
    """Recover the secret from the shares on A.

    Raises Inconsistent if no codeword of C1 matches, Ambiguous if the shares
    are consistent with more than one secret.
    """
    if len(values) != len(A):
        raise LengthMismatch(f"{len(values)} values for {len(A)} coordinates")
    # unknowns z = (s, r): (E restricted to A)^T z^T = values^T
    M = S.encoder.select_columns(A.members).transpose()
    try:
        sol = solve_affine(M, list(values))
    except NoSolution:
        raise Inconsistent("shares do not come from any codeword") from None
    if any(any(row[: S.l]) for row in kernel_basis(M).entries):
        raise Ambiguous("shares are consistent with several secrets")
    return sol.solution[: S.l]


def _col_rank(G: MatrixFq, cols: Sequence[int]) -> int:
    return rank_rows(G.field, [[r[j] for j in cols] for r in G.entries], len(cols))


def leakage_dim(S: RampScheme, A: CoordSet) -> int:
    """I(secret; shares on A) in symbols, by linear algebra.

    Equals [k1 - dim(C1 & V_{A^c})] - [k2 - dim(C2 & V_{A^c})], i.e. the
    column ranks of G1 and G2 restricted to A.
    """
    return _col_rank(S.pair.C1.G, A.members) - _col_rank(S.pair.C2.G, A.members)


def leakage_mi(S: RampScheme, A: CoordSet, budget: int | None = None) -> Fraction | float:
    """I(secret; shares on A) / log q from the exact joint distribution.

    Every (secret, randomness) pair is enumerated with equal weight.  The
    result is an exact Fraction whenever each pointwise likelihood ratio is an
    integral power of q (always the case for linear schemes); otherwise the
    float value is returned.
    """
    F = S.field
    k1 = S.pair.k1
    limit = config.budget(config.LEAKAGE_ENUM_BUDGET, budget)
    if F.q**k1 > limit:
        raise BudgetExceeded(f"q^k1 = {F.q ** k1} exceeds the enumeration budget {limit}")
    cols = A.members
    E = [[r[j] for j in cols] for r in S.encoder.entries]
    total = F.q**k1
    joint: Counter = Counter()
    marg_x: Counter = Counter()
    marg_s: Counter = Counter()
    for z in product(range(F.q), repeat=k1):
        x = [0] * len(cols)
        for a, row in zip(z, E):
            if a:
                x = [F.add(xi, F.mul(a, ri)) for xi, ri in zip(x, row)]
        s, x = z[: S.l], tuple(x)
        joint[s, x] += 1
        marg_x[x] += 1
        marg_s[s] += 1

    exact = Fraction(0)
    approx = 0.0
    is_exact = True
    for (s, x), c in joint.items():
        p = Fraction(c, total)
        # p(s,x) / (p(s) p(x))
        ratio = Fraction(c * total, marg_s[s] * marg_x[x])
        e = _log_exact(ratio, F.q)
        if e is None:
            is_exact = False
        else:
            exact += p * e
        approx += float(p) * log(ratio) / log(F.q)
    return exact if is_exact else approx


def _log_exact(ratio: Fraction, q: int) -> int | None:
    num, den = ratio.numerator, ratio.denominator
    sign = 1
    if den != 1:
        if num != 1:
            return None
        num, sign = den, -1
    e = 0
    while num % q == 0:
        num //= q
        e += 1
    return sign * e if num == 1 else None


def _subset_budget(n: int, sizes: range, budget: int | None) -> None:
    limit = config.budget(config.SUBSET_SCAN_BUDGET, budget)
    cost = sum(comb(n, s) for s in sizes)
    if cost > limit:
        raise BudgetExceeded(f"subset scan needs {cost} coalitions, budget is {limit}")


def adversary_threshold(S: RampScheme, t: int, budget: int | None = None) -> int:
    """Smallest coalition size that learns at least t symbols about the secret."""
    if not 1 <= t <= S.l:
        raise InvalidT(f"t={t} outside [1, l={S.l}]")
    _subset_budget(S.n, range(t, S.n + 1), budget)
    for size in range(t, S.n + 1):
        for A in combinations(range(S.n), size):
            if leakage_dim(S, CoordSet(S.n, A)) >= t:
                return size
    raise AssertionError("the full share set always reveals the secret")


def leakage_profile(S: RampScheme, budget: int | None = None) -> list[int]:
    """Worst-case leakage over coalitions of each size m = 0..n."""
    _subset_budget(S.n, range(S.n + 1), budget)
    out = []
    for size in range(S.n + 1):
        out.append(max(leakage_dim(S, CoordSet(S.n, A)) for A in combinations(range(S.n), size)))
    return out


def audit_report(S: RampScheme, seed=0, budget: int | None = None) -> dict:
    """Compare coalition thresholds with the RGHW of the dual pair."""
    ts = range(1, S.l + 1)
    thresholds = [adversary_threshold(S, t, budget) for t in ts]
    D = dual_pair(S.pair)
    dual_rghw = [rghw(D, t, budget) for t in ts]
    rng = np.random.default_rng(seed)
    secret = rng.integers(0, S.field.q, size=S.l).tolist()
    shares = deal(S, secret, seed)
    recovered = reconstruct(S, CoordSet.full(S.n), shares)
    return {
        "q": S.field.q,
        "n": S.n,
        "k1": S.pair.k1,
        "k2": S.pair.k2,
        "l": S.l,
        "adversary_threshold": thresholds,
        "dual_rghw": dual_rghw,
        "match": thresholds == dual_rghw,
        "leakage_profile": leakage_profile(S, budget),
        "roundtrip": {"seed": seed, "secret": secret, "shares": list(shares), "recovered": list(recovered)},
    }
