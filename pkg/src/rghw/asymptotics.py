"""Asymptotic rate/distance trade-offs for nested pairs and their bound curves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, PreconditionViolated

SCAN_STEP = 1e-4
BISECT_TOL = 1e-9
_EPS = 1e-12


def _in_unit(name: str, x: float) -> None:
    if not 0 <= x <= 1:
        raise DomainError(f"{name}={x} outside [0, 1]")


def _xlogx(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = x[pos] * np.log(x[pos])
    return out


def _entropy(x, q: int):
    """Vectorised H_q with 0 log 0 = 0 (no domain checks)."""
    x = np.asarray(x, dtype=float)
    return -(_xlogx(x) + _xlogx(1.0 - x)) / math.log(q)


def qary_entropy(x: float, q: int) -> float:
    """-x log_q x - (1-x) log_q (1-x); binary-shaped, so the maximum is log_q 2."""
    _in_unit("x", x)
    if q < 2:
        raise DomainError(f"q={q} must be at least 2")
    return float(_entropy(x, q))


def pi_q(q: int, eps: float = 1e-9) -> float:
    """Truncation of prod_{i>=1} (1 - q^-i) with relative error at most eps."""
    if q < 2:
        raise DomainError(f"q={q} must be at least 2")
    if not 0 < eps <= 0.25:
        raise DomainError(f"eps={eps} outside (0, 1/4]")
    terms = math.ceil(math.log(2 / eps, q)) + 2
    out = 1.0
    for i in range(1, terms + 1):
        out *= 1.0 - float(q) ** -i
    return out


def alpha_value(delta: float) -> float:
    """Largest asymptotic rate of C1 with M_t >= n delta, for fixed t."""
    _in_unit("delta", delta)
    return 1.0 - delta


@dataclass(frozen=True)
class AsymptoticPoint:
    R1: float
    R2: float
    tau: float = 0.0
    delta: float = 0.0
    t: int = 1
    q: int = 2

    def __post_init__(self):
        for name in ("R1", "R2", "tau", "delta"):
            _in_unit(name, getattr(self, name))
        if self.R2 > self.R1:
            raise PreconditionViolated(f"R2={self.R2} exceeds R1={self.R1}")


def thm3_certifies(R1: float, R2: float, tau: float, delta: float) -> bool:
    """Sufficient condition R1 + delta < 1 + tau for a pair with rates (R1, R2) and
    M_{ceil(n tau)} >= floor(n delta) at every large n."""
    if not 0 <= R1 <= 1:
        raise PreconditionViolated(f"0 <= R1 <= 1 violated: R1={R1}")
    if not 0 <= delta <= 1:
        raise PreconditionViolated(f"0 <= delta <= 1 violated: delta={delta}")
    if not 0 < tau <= min(R1, delta):
        raise PreconditionViolated(f"0 < tau <= min(R1, delta) violated: tau={tau}")
    if not 0 <= R2 <= R1 - tau + _EPS:
        raise PreconditionViolated(f"0 <= R2 <= R1 - tau violated: R2={R2}")
    return R1 + delta < 1 + tau


class BoundValue(NamedTuple):
    value: float
    clamped: bool


def corollary1_value(tau: float, R1: float, R2: float) -> BoundValue:
    """True value 1 + tau - R1 of the leakage-aware metric, clamped to [0, 1]."""
    for name, x in (("tau", tau), ("R1", R1), ("R2", R2)):
        if not 0 <= x <= 1:
            raise PreconditionViolated(f"0 <= {name} <= 1 violated: {name}={x}")
    if R2 > R1:
        raise PreconditionViolated(f"R2 <= R1 violated: R1={R1}, R2={R2}")
    if tau == 0 and not math.isclose(R1 - R2, 0.0, abs_tol=_EPS):
        raise PreconditionViolated("tau > 0 or tau = R1 - R2 violated: the case tau = 0 < R1 - R2 is open")
    raw = 1.0 + tau - R1
    val = min(1.0, max(0.0, raw))
    return BoundValue(val, val != raw)


def eq101_value(R1: float) -> float:
    """delta^0_q(t, R1, R1) = 1 - R1."""
    _in_unit("R1", R1)
    return 1.0 - R1


def _frontier(feasible: Callable[[np.ndarray], np.ndarray]) -> float:
    """Right end of the feasible interval that starts at delta = 0.

    The unit interval is scanned at SCAN_STEP; the first infeasible grid point
    is refined by bisection to BISECT_TOL.  Returns 0 if delta = 0 is infeasible
    and 1 if the whole grid is feasible.
    """
    n = round(1 / SCAN_STEP)
    grid = np.arange(n + 1) / n
    ok = feasible(grid)
    if not ok[0]:
        return 0.0
    bad = np.flatnonzero(~ok)
    if bad.size == 0:
        return 1.0
    lo, hi = float(grid[bad[0] - 1]), float(grid[bad[0]])
    while hi - lo > BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if feasible(np.array([mid]))[0]:
            lo = mid
        else:
            hi = mid
    return lo


def _check_curve_args(t: int, R1: float, q: int) -> None:
    if t < 1:
        raise DomainError(f"t={t} must be a positive integer")
    if q < 2:
        raise DomainError(f"q={q} must be at least 2")
    _in_unit("R1", R1)


def eq102_bound(t: int, R1: float, q: int) -> float:
    """Largest delta with delta <= 1 - H_q(delta)/t - R1 (lower bound on delta^0_q)."""
    _check_curve_args(t, R1, q)
    return _frontier(lambda d: d <= 1.0 - _entropy(d, q) / t - R1)


def eq103_rate(delta, t: int, q: int):
    """1 - delta + (delta/t) log_q(delta/(1-q^-t)) + ((1-delta)/t) log_q(1-delta)."""
    d = np.asarray(delta, dtype=float)
    lq = math.log(q)
    shift = math.log(1.0 - float(q) ** -t)
    return 1.0 - d + (_xlogx(d) - d * shift + _xlogx(1.0 - d)) / (t * lq)


def eq103_bound(t: int, R1: float, q: int) -> float:
    """Largest delta (first crossing) at which rate R1 stays under the comparison curve."""
    _check_curve_args(t, R1, q)
    return _frontier(lambda d: R1 <= eq103_rate(d, t, q))


def fig1_table(q: int = 4, t: int = 2, r1_step: float = 0.01) -> list[tuple[float, float, float]]:
    if not 0 < r1_step <= 0.5:
        raise DomainError(f"r1_step={r1_step} outside (0, 0.5]")
    steps = math.floor(1 / r1_step + 1e-9)
    r1s = [min(1.0, i * r1_step) for i in range(steps + 1)]
    if r1s[-1] < 1.0:
        r1s.append(1.0)
    return [(r, eq102_bound(t, r, q), eq103_bound(t, r, q)) for r in r1s]


def fig1_csv(rows) -> str:
    lines = ["R1,eq102,eq103"]
    lines += [f"{r:.9f},{a:.9f},{b:.9f}" for r, a, b in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MaximizerAudit:
    argmax_b_over_n: float
    argmax_a_over_n: float
    argmax_alpha: float
    max_two_var: float
    max_one_var: float


def _axis(lo: float, hi: float, step: float) -> np.ndarray:
    count = math.floor((hi - lo) / step + 1e-9)
    return lo + step * np.arange(count + 1)


def proof_maximizer_audit(R1: float, R2: float, tau: float, delta: float, grid_step: float = 1e-3) -> MaximizerAudit:
    """Grid-maximise the two exponent objectives from the large-n argument.

    Two-variable objective over (a/n, b/n) with b/n in [tau, R1 - R2] and
    0 <= a/n <= min(delta - b/n, R1 - b/n, R2); the H_q(delta)/n term is
    dropped (n -> infinity).  One-variable objective over alpha in
    [0, min(delta - tau, R1 - tau, R2)] with b/n fixed at tau.
    """
    for name, x in (("R1", R1), ("R2", R2), ("tau", tau), ("delta", delta)):
        if not 0 <= x <= 1:
            raise PreconditionViolated(f"0 <= {name} <= 1 violated: {name}={x}")
    if tau > delta:
        raise PreconditionViolated(f"tau <= delta violated: tau={tau}, delta={delta}")
    if tau > R1 - R2 + _EPS:
        raise PreconditionViolated(f"tau <= R1 - R2 violated: tau={tau}, R1-R2={R1 - R2}")
    if grid_step <= 0:
        raise PreconditionViolated("grid_step must be positive")

    ys = _axis(tau, max(tau, R1 - R2), grid_step)
    a_cap = np.minimum(np.minimum(delta - ys, R1 - ys), R2)
    xs = _axis(0.0, max(0.0, float(a_cap.max())), grid_step)
    Y, X = np.meshgrid(ys, xs, indexing="ij")
    obj = X * (delta - X) + (R2 - X) * (1 - R2) + Y * (delta - X - Y) + (R1 - R2 - Y) * (1 - R1)
    obj = np.where(X <= a_cap[:, None] + 1e-12, obj, -np.inf)
    iy, ix = np.unravel_index(int(np.argmax(obj)), obj.shape)

    alphas = _axis(0.0, max(0.0, min(delta - tau, R1 - tau, R2)), grid_step)
    g = alphas * (delta - alphas) + (R2 - alphas) * (1 - R2) + tau * (delta - alphas - tau) + (R1 - R2 - tau) * (1 - R1)
    ia = int(np.argmax(g))
    return MaximizerAudit(float(ys[iy]), float(xs[ix]), float(alphas[ia]), float(obj[iy, ix]), float(g[ia]))
