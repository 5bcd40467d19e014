"""Linear codes, nested pairs and exact relative generalized Hamming weights.

The RGHW of a nested pair C2 <= C1 <= F_q^n is

    M_t(C1, C2) = min{ |I| : dim(C1 & V_I) - dim(C2 & V_I) >= t }

where V_I holds the vectors supported inside I.  Coordinates are 0-indexed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, floor
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import config
from .errors import (
    BudgetExceeded,
    FieldMismatch,
    InvalidDims,
    InvalidT,
    InvariantViolation,
    LengthMismatch,
    WidthMismatch,
)
from .field import FieldSpec
from .linalg import MatrixFq, kernel_basis, rank, rank_bits, rank_rows, rref


@dataclass(frozen=True)
class CoordSet:
    n: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(int(i) for i in self.members)))
        if any(not 0 <= i < self.n for i in members):
            raise ValueError(f"coordinates {members} out of range for n={self.n}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, n: int, members: Iterable[int] = ()) -> CoordSet:
        return cls(n, tuple(members))

    @classmethod
    def full(cls, n: int) -> CoordSet:
        return cls(n, tuple(range(n)))

    def complement(self) -> CoordSet:
        inside = set(self.members)
        return CoordSet(self.n, tuple(i for i in range(self.n) if i not in inside))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __le__(self, other: CoordSet) -> bool:
        return set(self.members) <= set(other.members)


@dataclass(frozen=True)
class LinearCode:
    """A linear [n, k] code; ``G`` is its RREF generator matrix (no zero rows)."""

    field: FieldSpec
    n: int
    k: int
    G: MatrixFq

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a) for r in self.G.entries]

    def codewords(self) -> Iterator[tuple[int, ...]]:
        F = self.field
        vecs = [(0,) * self.n]
        for row in self.G.entries:
            scaled = [tuple(F.mul(c, a) for a in row) for c in range(F.q)]
            vecs = [tuple(F.add(x, y) for x, y in zip(v, s)) for v in vecs for s in scaled]
        return iter(vecs)

    def contains(self, v: Sequence[int]) -> bool:
        if len(v) != self.n:
            raise LengthMismatch(f"vector length {len(v)} != {self.n}")
        rows = [list(r) for r in self.G.entries] + [list(v)]
        return rank_rows(self.field, rows, self.n) == self.k


def make_code(field: FieldSpec, n: int, generators: MatrixFq) -> LinearCode:
    if generators.field != field:
        raise FieldMismatch(f"{generators.field!r} vs {field!r}")
    if generators.cols != n:
        raise WidthMismatch(f"generators have {generators.cols} columns, expected {n}")
    R, pivots = rref(generators)
    k = len(pivots)
    G = MatrixFq(field, k, n, R.entries[:k])
    return LinearCode(field, n, k, G)


def code_from_rows(field: FieldSpec, n: int, rows: Sequence[Sequence[int]]) -> LinearCode:
    return make_code(field, n, MatrixFq.from_rows(field, rows, n))


def zero_code(field: FieldSpec, n: int) -> LinearCode:
    return code_from_rows(field, n, [])


def full_code(field: FieldSpec, n: int) -> LinearCode:
    return make_code(field, n, MatrixFq.identity(field, n))


def dual(C: LinearCode) -> LinearCode:
    return make_code(C.field, C.n, kernel_basis(C.G))


def is_subcode(C2: LinearCode, C1: LinearCode) -> bool:
    if C1.field != C2.field or C1.n != C2.n:
        return False
    if C2.k > C1.k:
        return False
    return rank(C1.G.stack(C2.G)) == C1.k


def shortened_dim(C: LinearCode, I: CoordSet) -> int:
    """dim of {c in C : supp(c) inside I}."""
    if I.n != C.n:
        raise LengthMismatch(f"coordinate set for n={I.n}, code has n={C.n}")
    outside = I.complement().members
    return C.k - rank_rows(C.field, [[r[j] for j in outside] for r in C.G.entries], len(outside))


@dataclass(frozen=True)
class NestedPair:
    C1: LinearCode
    C2: LinearCode

    def __post_init__(self):
        if self.C1.field != self.C2.field:
            raise FieldMismatch("codes live over different fields")
        if self.C1.n != self.C2.n:
            raise LengthMismatch("codes have different lengths")
        if not is_subcode(self.C2, self.C1):
            raise InvalidDims("C2 is not contained in C1")

    @property
    def field(self) -> FieldSpec:
        return self.C1.field

    @property
    def n(self) -> int:
        return self.C1.n

    @property
    def k1(self) -> int:
        return self.C1.k

    @property
    def k2(self) -> int:
        return self.C2.k

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "G1": self.C1.G.tolist(),
            "G2": self.C2.G.tolist(),
        }

    @classmethod
    def from_json(cls, d: dict) -> NestedPair:
        F = FieldSpec.from_json(d["field"])
        n = int(d["n"])
        return cls(code_from_rows(F, n, d["G1"]), code_from_rows(F, n, d["G2"]))


def load_pair(path) -> NestedPair:
    with open(path) as fh:
        return NestedPair.from_json(json.load(fh))


def dump_pair(P: NestedPair) -> str:
    return json.dumps(P.to_json(), sort_keys=True) + "\n"


def dual_pair(P: NestedPair) -> NestedPair:
    """(C2^perp, C1^perp): the pair whose RGHW governs the secret-sharing security."""
    return NestedPair(dual(P.C2), dual(P.C1))


# ---------------------------------------------------------------------------
# RGHW engine
# ---------------------------------------------------------------------------

@dataclass
class _Reduced:
    field: FieldSpec
    n: int
    G1: list[list[int]]
    G2: list[list[int]]

    @property
    def k1(self):
        return len(self.G1)

    @property
    def k2(self):
        return len(self.G2)


def _unit_index(row: Sequence[int]) -> int | None:
    nz = [j for j, a in enumerate(row) if a]
    return nz[0] if len(nz) == 1 else None


def _reduce(P: NestedPair) -> _Reduced:
    # A coordinate i with e_i in C2 (hence in C1) adds exactly 1 to both
    # dimensions whenever it joins I, so it never helps a witness; deleting it
    # leaves every dimension difference unchanged.  In RREF, e_i in C is
    # always one of the generator rows.
    R = {i for i in map(_unit_index, P.C2.G.entries) if i is not None}
    keep = [j for j in range(P.n) if j not in R]

    def strip(C):
        return [[r[j] for j in keep] for r in C.G.entries if _unit_index(r) not in R]

    G1, G2 = strip(P.C1), strip(P.C2)
    if len(G1) != P.k1 - len(R) or len(G2) != P.k2 - len(R):
        raise InvariantViolation("reduction lost rank")
    return _Reduced(P.field, len(keep), G1, G2)


def _scan_count(n: int, lo: int, hi: int) -> int:
    return sum(comb(n, s) for s in range(max(lo, 0), min(hi, n) + 1))


def _zeta_preferred(red: _Reduced) -> bool:
    return red.n >= 12 and red.field.q ** red.k1 <= 1 << 14


def _check_budget(red: _Reduced, t_lo: int, t_hi: int, budget: int | None) -> bool:
    """Decide the engine and enforce the budget before any scanning."""
    limit = config.budget(config.RGHW_SUBSET_BUDGET, budget)
    if _zeta_preferred(red):
        cost = 1 << red.n
        use_zeta = True
    else:
        # Singleton bound: M_t <= n + t - k1
        cost = _scan_count(red.n, t_lo, red.n + t_hi - red.k1)
        use_zeta = False
    if cost > limit:
        raise BudgetExceeded(f"exhaustive search needs {cost} subsets, budget is {limit}")
    return use_zeta


def _diff_fn(red: _Reduced):
    """Return f(I) -> (dim C1&V_I - dim C2&V_I) and the dim C1&V_I value."""
    F, n = red.field, red.n
    k1, k2 = red.k1, red.k2
    if F.q == 2:
        m1 = [sum(1 << j for j, a in enumerate(r) if a) for r in red.G1]
        m2 = [sum(1 << j for j, a in enumerate(r) if a) for r in red.G2]
        full = (1 << n) - 1

        def dims(I):
            out = full
            for i in I:
                out ^= 1 << i
            d1 = k1 - rank_bits([r & out for r in m1])
            return d1, (lambda: k2 - rank_bits([r & out for r in m2]))

    else:
        G1, G2 = red.G1, red.G2

        def dims(I):
            inside = set(I)
            out = [j for j in range(n) if j not in inside]
            d1 = k1 - rank_rows(F, [[r[j] for j in out] for r in G1], len(out))
            return d1, (lambda: k2 - rank_rows(F, [[r[j] for j in out] for r in G2], len(out)))

    return dims


def _scan_profile(red: _Reduced, ts: Sequence[int]) -> dict[int, int]:
    dims = _diff_fn(red)
    want = sorted(ts)
    found: dict[int, int] = {}
    for s in range(want[0], red.n + 1):
        pending = [t for t in want if t not in found]
        need = pending[0]
        best = -1
        for I in combinations(range(red.n), s):
            d1, d2 = dims(I)
            if d1 < need or d1 <= best:
                continue
            best = max(best, d1 - d2())
            if best >= pending[-1]:
                break
        for t in pending:
            if best >= t:
                found[t] = s
        if len(found) == len(want):
            break
    return found


def _codeword_supports(F: FieldSpec, rows: list[list[int]], n: int) -> np.ndarray:
    vecs = [(0,) * n]
    for row in rows:
        scaled = [tuple(F.mul(c, a) for a in row) for c in range(F.q)]
        vecs = [tuple(F.add(x, y) for x, y in zip(v, s)) for v in vecs for s in scaled]
    weights = [1 << j for j in range(n)]
    return np.array([sum(w for a, w in zip(v, weights) if a) for v in vecs], dtype=np.int64)


def subset_sum(hist: np.ndarray, n: int) -> np.ndarray:
    """Zeta transform: out[I] = sum of hist[S] over S subset of I (last axis, length 2^n)."""
    out = hist.copy()
    lead = out.shape[:-1]
    for j in range(n):
        view = out.reshape(lead + (-1, 2, 1 << j))
        view[..., 1, :] += view[..., 0, :]
    return out


def popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    pc = np.zeros(1 << n, dtype=np.int16)
    for j in range(n):
        pc += ((idx >> j) & 1).astype(np.int16)
    return pc


def _log_exact(counts: np.ndarray, q: int, kmax: int) -> np.ndarray:
    powers = np.array([q**e for e in range(kmax + 1)], dtype=np.int64)
    e = np.searchsorted(powers, counts)
    if np.any(e > kmax) or np.any(powers[np.minimum(e, kmax)] != counts):
        raise InvariantViolation("subspace sizes are not powers of q")
    return e.astype(np.int16)


def _zeta_diffs(red: _Reduced) -> np.ndarray:
    F, n = red.field, red.n
    size = 1 << n
    dims = []
    for rows in (red.G1, red.G2):
        hist = np.bincount(_codeword_supports(F, rows, n), minlength=size).astype(np.int64)
        dims.append(_log_exact(subset_sum(hist, n), F.q, len(rows)))
    return dims[0] - dims[1]


def _zeta_profile(red: _Reduced, ts: Sequence[int]) -> dict[int, int]:
    diff = _zeta_diffs(red)
    pc = popcounts(red.n)
    return {t: int(pc[diff >= t].min()) for t in ts if np.any(diff >= t)}


def _rghw_many(P: NestedPair, ts: Sequence[int], budget: int | None) -> dict[int, int]:
    ell = P.k1 - P.k2
    for t in ts:
        if not 1 <= t <= ell:
            raise InvalidT(f"t={t} outside [1, k1-k2={ell}]")
    red = _reduce(P)
    use_zeta = _check_budget(red, min(ts), max(ts), budget)
    found = _zeta_profile(red, ts) if use_zeta else _scan_profile(red, ts)
    for t in ts:
        m = found.get(t)
        # t <= M_t (difference never exceeds |I|) and Singleton M_t + k1 <= n + t
        if m is None or not t <= m <= P.n or m + P.k1 > P.n + t:
            raise InvariantViolation(f"M_{t}={m} breaks t <= M_t <= n + t - k1 for {P}")
    return found


def rghw(P: NestedPair, t: int, budget: int | None = None) -> int:
    """Exact M_t(C1, C2) by exhaustive search over coordinate sets."""
    return _rghw_many(P, [t], budget)[t]


def rghw_profile(P: NestedPair, budget: int | None = None) -> list[int]:
    """[M_1, ..., M_{k1-k2}]."""
    ts = list(range(1, P.k1 - P.k2 + 1))
    if not ts:
        return []
    found = _rghw_many(P, ts, budget)
    return [found[t] for t in ts]


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------

def lemma3_construct(field: FieldSpec, n: int, k1: int, k2: int) -> NestedPair:
    """Pair with M_{k1-k2}(C1, C2) = n - k2.

    C2 = V_{0..k2-1}; C1 = C2 + D with D generated by [identity | all-ones]
    on the coordinates k2..n-1 (support exactly those coordinates).
    """
    if not 0 <= k2 < k1 <= n:
        raise InvalidDims(f"need 0 <= k2 < k1 <= n, got n={n}, k1={k1}, k2={k2}")
    ell = k1 - k2
    rows2 = [[int(j == i) for j in range(n)] for i in range(k2)]
    rowsD = []
    for i in range(ell):
        row = [0] * n
        row[k2 + i] = 1
        for j in range(k2 + ell, n):
            row[j] = 1
        rowsD.append(row)
    return NestedPair(code_from_rows(field, n, rows2 + rowsD), code_from_rows(field, n, rows2))


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def theorem2_construct(field: FieldSpec, n: int, t: int, delta) -> NestedPair:
    """Pair with dim C1 = n + t - floor(n delta) and M_t = floor(n delta)."""
    delta = _as_fraction(delta)
    if not 0 <= delta <= 1:
        raise InvalidDims(f"delta={delta} outside [0, 1]")
    d = floor(n * delta)
    k1, k2 = n + t - d, n - d
    if not 0 <= k2 < k1 <= n:
        raise InvalidDims(f"n={n}, t={t}, delta={delta} give k1={k1}, k2={k2}; need 0 <= k2 < k1 <= n")
    return lemma3_construct(field, n, k1, k2)


def sample_nested_pair(field: FieldSpec, n: int, k1: int, k2: int, seed) -> NestedPair:
    """Random pair: C1 from a uniform full-rank k1 x n matrix, C2 from its first k2 rows."""
    if not 0 <= k2 <= k1 <= n:
        raise InvalidDims(f"need 0 <= k2 <= k1 <= n, got n={n}, k1={k1}, k2={k2}")
    rng = np.random.default_rng(seed)
    while True:
        rows = rng.integers(0, field.q, size=(k1, n)).tolist()
        if rank_rows(field, rows, n) == k1:
            break
    return NestedPair(code_from_rows(field, n, rows), code_from_rows(field, n, rows[:k2]))
