"""Dense exact linear algebra over F_q."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import FieldMismatch, LengthMismatch, NoSolution
from .field import FieldSpec


@dataclass(frozen=True)
class MatrixFq:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        q = self.field.q
        for r in self.entries:
            for a in r:
                if not 0 <= a < q:
                    raise ValueError(f"entry {a} outside [0, {q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> MatrixFq:
        entries = tuple(tuple(int(a) for a in r) for r in rows)
        if cols is None:
            if not entries:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(entries[0])
        return cls(field, len(entries), cols, entries)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> MatrixFq:
        return cls(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> MatrixFq:
        return cls(field, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> MatrixFq:
        return MatrixFq(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols)

    def select_columns(self, cols: Sequence[int]) -> MatrixFq:
        return MatrixFq(self.field, self.rows, len(cols), tuple(tuple(r[j] for j in cols) for r in self.entries))

    def stack(self, other: MatrixFq) -> MatrixFq:
        _same_field(self, other)
        if other.cols != self.cols:
            raise LengthMismatch("column counts differ")
        return MatrixFq(self.field, self.rows + other.rows, self.cols, self.entries + other.entries)

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        _same_field(self, other)
        if self.cols != other.rows:
            raise LengthMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        F = self.field
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(tuple(dot(F, r, c) for c in cols_b) for r in self.entries)
        return MatrixFq(F, self.rows, other.cols, out)

    def vec_mul(self, x: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix: x · M."""
        if len(x) != self.rows:
            raise LengthMismatch(f"vector of length {len(x)} against {self.rows} rows")
        F = self.field
        out = [0] * self.cols
        for a, r in zip(x, self.entries):
            if a:
                for j, b in enumerate(r):
                    if b:
                        out[j] = F.add(out[j], F.mul(a, b))
        return tuple(out)


def _same_field(a: MatrixFq, b: MatrixFq):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def dot(F: FieldSpec, x: Sequence[int], y: Sequence[int]) -> int:
    if F.m == 1:
        return sum(a * b for a, b in zip(x, y)) % F.p
    s = 0
    for a, b in zip(x, y):
        if a and b:
            s = F.add(s, F.mul(a, b))
    return s


def rref_rows(F: FieldSpec, rows: list[list[int]], ncols: int, full: bool = True):
    """In-place Gauss-Jordan elimination on a list of row lists.

    Returns the pivot columns.  With ``full=False`` only rows below the pivot
    are cleared, which is enough for rank.
    """
    pivots = []
    nrows = len(rows)
    r = 0
    prime = F.m == 1
    p = F.p
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            if prime:
                inv = pow(lead, p - 2, p)
                prow = [a * inv % p for a in prow]
            else:
                inv = F.inv(lead)
                prow = [F.mul(a, inv) for a in prow]
            rows[r] = prow
        targets = range(nrows) if full else range(r + 1, nrows)
        for i in targets:
            if i == r:
                continue
            f = rows[i][c]
            if not f:
                continue
            row = rows[i]
            if prime:
                rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
            else:
                nf = F.neg(f)
                rows[i] = [F.add(a, F.mul(nf, b)) if b else a for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def rank_rows(F: FieldSpec, rows: list[list[int]], ncols: int) -> int:
    return len(rref_rows(F, [list(r) for r in rows], ncols, full=False))


def rank_bits(masks: list[int]) -> int:
    """Rank over F_2 of rows given as integer bitmasks."""
    basis: dict[int, int] = {}
    for v in masks:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                break
            v ^= b
    return len(basis)


def rref(M: MatrixFq) -> tuple[MatrixFq, list[int]]:
    rows = [list(r) for r in M.entries]
    pivots = rref_rows(M.field, rows, M.cols)
    return MatrixFq(M.field, M.rows, M.cols, tuple(tuple(r) for r in rows)), pivots


def rank(M: MatrixFq) -> int:
    return rank_rows(M.field, M.entries, M.cols)


def kernel_basis(M: MatrixFq) -> MatrixFq:
    """Basis of {x : M x^T = 0}, one basis row per free column in increasing order."""
    F = M.field
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for f in range(M.cols):
        if f in pivset:
            continue
        x = [0] * M.cols
        x[f] = 1
        for i, pc in enumerate(pivots):
            x[pc] = F.neg(R.entries[i][f])
        basis.append(tuple(x))
    return MatrixFq(F, len(basis), M.cols, tuple(basis))


@dataclass(frozen=True)
class AffineSolution:
    solution: tuple[int, ...]
    freedom: int


def solve_affine(M: MatrixFq, y: Sequence[int]) -> AffineSolution:
    """Solve M x^T = y^T; free variables are set to 0."""
    if len(y) != M.rows:
        raise LengthMismatch(f"right-hand side has length {len(y)}, expected {M.rows}")
    F = M.field
    aug = [list(r) + [int(b)] for r, b in zip(M.entries, y)]
    pivots = rref_rows(F, aug, M.cols + 1)
    if pivots and pivots[-1] == M.cols:
        raise NoSolution("right-hand side is not in the column space")
    x = [0] * M.cols
    for i, pc in enumerate(pivots):
        x[pc] = aug[i][M.cols]
    return AffineSolution(tuple(x), M.cols - len(pivots))
