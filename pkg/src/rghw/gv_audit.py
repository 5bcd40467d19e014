"""Empirical soundness audit of the counting certificate over F_2.

For each (n, k1, k2) the best achievable RGHW profile is found by brute force:
uniformly sampled nested pairs, plus exhaustive enumeration of every nested
pair when there are few enough of them.  Each certificate verdict for
(t, d) is then compared with "some pair has M_t >= d".

Binary codes are handled as integer bitmasks (bit j = coordinate j), many
pairs at a time with numpy.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .codes import popcounts, subset_sum
from .counting import gv_max_d, n1

SAMPLES = 10_000
EXHAUSTIVE_LIMIT = 10**6
_CHUNK_CELLS = 1 << 21


def _codewords(G: np.ndarray) -> np.ndarray:
    """(B, k) generator bitmasks -> (B, 2^k) codeword bitmasks."""
    cw = np.zeros((G.shape[0], 1), dtype=np.int64)
    for j in range(G.shape[1]):
        cw = np.concatenate([cw, cw ^ G[:, j : j + 1]], axis=1)
    return cw


def _subspace_dims(G: np.ndarray, n: int) -> np.ndarray:
    """dim(C & V_I) for every coordinate mask I; shape (B, 2^n)."""
    B, k = G.shape
    size = 1 << n
    cw = _codewords(G)
    if (1 << k) <= n:
        # few codewords: test each against every mask directly
        outside = ~np.arange(size, dtype=np.int64)
        counts = ((cw[:, :, None] & outside[None, None, :]) == 0).sum(axis=1, dtype=np.int32)
    else:
        flat = (cw + (np.arange(B, dtype=np.int64) * size)[:, None]).ravel()
        hist = np.bincount(flat, minlength=B * size).astype(np.int32).reshape(B, size)
        counts = subset_sum(hist, n)
    return (np.frexp(counts)[1] - 1).astype(np.int8)


def _profiles_from_diff(diff: np.ndarray, n: int, ell: int) -> np.ndarray:
    pc = popcounts(n).astype(np.int8)
    big = np.int8(n + 1)
    out = np.empty(diff.shape[:-1] + (ell,), dtype=np.int16)
    for t in range(1, ell + 1):
        out[..., t - 1] = np.where(diff >= t, pc, big).min(axis=-1)
    return out


def batch_profiles(G1: np.ndarray, G2: np.ndarray, n: int) -> np.ndarray:
    """RGHW profiles (B, k1 - k2) of binary nested pairs given by row bitmasks.

    Rows of G1 and G2 must each be linearly independent, with span(G2) inside span(G1).
    """
    diff = _subspace_dims(G1, n) - _subspace_dims(G2, n)
    return _profiles_from_diff(diff, n, G1.shape[1] - G2.shape[1])


def _chunk(n: int, k1: int) -> int:
    return max(1, _CHUNK_CELLS // max(1 << n, 1 << k1))


def _full_rank(G: np.ndarray) -> np.ndarray:
    return (_codewords(G) == 0).sum(axis=1) == 1


def sample_profiles_max(n: int, k1: int, k2: int, samples: int, seed) -> np.ndarray:
    """Elementwise max of the profile over `samples` uniform full-rank pairs."""
    rng = np.random.default_rng(seed)
    best = np.zeros(k1 - k2, dtype=np.int16)
    done = 0
    step = _chunk(n, k1)
    while done < samples:
        G = rng.integers(0, 1 << n, size=(min(step, samples - done), k1), dtype=np.int64)
        G = G[_full_rank(G)]
        if not len(G):
            continue
        best = np.maximum(best, batch_profiles(G, G[:, :k2], n).max(axis=0))
        done += len(G)
    return best


def rref_subspaces(n: int, k: int, systematic: bool = False) -> np.ndarray:
    """Every k-dim subspace of F_2^n as its RREF rows; shape (N1(n,k), k).

    With ``systematic`` only pivots 0..k-1 are used: one code from every
    coordinate-permutation class.
    """
    blocks = []
    pivot_sets = [tuple(range(k))] if systematic else combinations(range(n), k)
    for piv in pivot_sets:
        pivset = set(piv)
        free = [[j for j in range(p + 1, n) if j not in pivset] for p in piv]
        nfree = sum(len(f) for f in free)
        assign = np.arange(1 << nfree, dtype=np.int64)
        rows = np.zeros((1 << nfree, k), dtype=np.int64)
        bit = 0
        for i, p in enumerate(piv):
            rows[:, i] = 1 << p
            for j in free[i]:
                rows[:, i] |= ((assign >> bit) & 1) << j
                bit += 1
        blocks.append(rows)
    if not blocks:
        return np.zeros((1, 0), dtype=np.int64)
    return np.concatenate(blocks)


def pair_count(n: int, k1: int, k2: int) -> int:
    return n1(n, k1, 2) * n1(k1, k2, 2)


def enumerated_count(n: int, k1: int, k2: int) -> int:
    """Pairs visited by the exhaustive search (systematic C1 only)."""
    return 2 ** (k1 * (n - k1)) * n1(k1, k2, 2)


def exhaustive_profiles_max(n: int, k1: int, k2: int) -> np.ndarray:
    """Elementwise max of the profile over every nested pair with these dims.

    RGHW is invariant under coordinate permutations, so C1 runs over
    systematic generator matrices [I | A] only; C2 runs over every subspace.
    """
    C1s = rref_subspaces(n, k1, systematic=True)
    Hs = rref_subspaces(k1, k2)
    # bits[h, i, j] = 1 when row i of C2 uses row j of C1
    bits = ((Hs[:, :, None] >> np.arange(k1)) & 1).astype(np.int64)
    best = np.zeros(k1 - k2, dtype=np.int16)
    step = _chunk(n, k1)
    h_step = min(len(Hs), step)
    c_step = max(1, step // h_step)
    for c0 in range(0, len(C1s), c_step):
        G1 = C1s[c0 : c0 + c_step]
        dims1 = _subspace_dims(G1, n)
        for h0 in range(0, len(Hs), h_step):
            B = bits[h0 : h0 + h_step]
            # G2[c, h, i] = XOR_j B[h, i, j] * G1[c, j]
            if k2:
                G2 = np.bitwise_xor.reduce(B[None, :, :, :] * G1[:, None, None, :], axis=-1)
                dims2 = _subspace_dims(G2.reshape(-1, k2), n).reshape(len(G1), len(B), -1)
            else:
                dims2 = np.zeros((len(G1), len(B), 1 << n), dtype=np.int8)
            prof = _profiles_from_diff(dims1[:, None, :] - dims2, n, k1 - k2)
            best = np.maximum(best, prof.reshape(-1, k1 - k2).max(axis=0))
    return best


@dataclass
class AuditRow:
    n: int
    k1: int
    k2: int
    t: int
    d: int
    certified: bool
    sampled_max: int
    exhaustive_max: int | None

    @property
    def best(self) -> int:
        return max(self.sampled_max, self.exhaustive_max or 0)

    @property
    def brute_force(self) -> str:
        if self.best >= self.d:
            return "achieved"
        return "impossible" if self.exhaustive_max is not None else "not-found"

    @property
    def status(self) -> str:
        bf = self.brute_force
        if self.certified and bf == "impossible":
            return "UNSOUND"
        if self.certified and bf == "not-found":
            return "UNCONFIRMED"
        if not self.certified and bf == "achieved":
            return "conservative"
        return "agree"


@dataclass
class AuditResult:
    rows: list[AuditRow] = field(default_factory=list)

    def discrepancies(self) -> list[AuditRow]:
        return [r for r in self.rows if r.status in ("UNSOUND", "UNCONFIRMED")]

    def find(self, n, k1, k2, t, d) -> AuditRow:
        return next(r for r in self.rows if (r.n, r.k1, r.k2, r.t, r.d) == (n, k1, k2, t, d))

    def summary(self) -> list[dict]:
        """Per (n, k1, k2, t): largest certified d against the largest achieved d."""
        out = {}
        for r in self.rows:
            key = (r.n, r.k1, r.k2, r.t)
            s = out.setdefault(key, {"n": r.n, "k1": r.k1, "k2": r.k2, "t": r.t, "gv_max_d": None,
                                     "bf_max_d": r.best, "exhaustive": r.exhaustive_max is not None})
            if r.certified:
                s["gv_max_d"] = r.d
        for s in out.values():
            s["gap"] = None if s["gv_max_d"] is None else s["gv_max_d"] - s["bf_max_d"]
        return list(out.values())

    def to_csv(self, only_discrepancies: bool = False) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "k1", "k2", "t", "d", "certified", "sampled_max", "exhaustive_max", "brute_force", "status"])
        for r in self.rows:
            if only_discrepancies and r.status not in ("UNSOUND", "UNCONFIRMED"):
                continue
            ex = "" if r.exhaustive_max is None else r.exhaustive_max
            w.writerow([r.n, r.k1, r.k2, r.t, r.d, int(r.certified), r.sampled_max, ex, r.brute_force, r.status])
        return buf.getvalue()


def audit_dims(n: int, k1: int, k2: int, samples: int = SAMPLES, exhaustive_limit: int = EXHAUSTIVE_LIMIT, seed=0) -> list[AuditRow]:
    sampled = sample_profiles_max(n, k1, k2, samples, np.random.SeedSequence([seed, n, k1, k2]))
    exhaustive = exhaustive_profiles_max(n, k1, k2) if enumerated_count(n, k1, k2) <= exhaustive_limit else None
    rows = []
    for t in range(1, k1 - k2):
        res = gv_max_d(2, n, k1, k2, t)
        for rep in res.reports:
            rows.append(AuditRow(
                n, k1, k2, t, rep.params.d, rep.certified,
                int(sampled[t - 1]),
                None if exhaustive is None else int(exhaustive[t - 1]),
            ))
    return rows


def gv_audit(max_n: int = 8, samples: int = SAMPLES, exhaustive_limit: int = EXHAUSTIVE_LIMIT, seed=0) -> AuditResult:
    """Audit every binary tuple with n <= max_n and 1 <= t <= k1 - k2 - 1."""
    result = AuditResult()
    for n in range(2, max_n + 1):
        for k1 in range(2, n + 1):
            for k2 in range(0, k1 - 1):
                result.rows.extend(audit_dims(n, k1, k2, samples, exhaustive_limit, seed))
    return result
