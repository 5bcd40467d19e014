"""Finite fields F_q, q = p^m.

Elements are integers in [0, q): the base-p digits of the index are the
coefficients of the polynomial representative, constant term first.  With
p = 2 addition is therefore plain XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

from . import config
from .errors import DivisionByZero, FieldMismatch, NotPrimePower

_TABLE_LIMIT = 256


def factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise NotPrimePower(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0 or d * d > q)
    if q % p:
        p = q
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise NotPrimePower(f"q={q} has at least two distinct prime factors")
    return p, m


# -- private polynomial helpers over F_p (coefficient lists, constant first) --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not _poly_mod(list(f), list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # product() yields tuples in lexicographic order with the constant term first
    for low in product(range(p), repeat=m):
        f = low + (1,)
        if low[0] != 0 and _is_irreducible(f, p):
            return f
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q.  ``modulus`` is monic of degree m, constant term first."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.m < 1 or factor_prime_power(self.p) != (self.p, 1):
            raise NotPrimePower(f"p={self.p} is not prime")
        if self.m == 1:
            if self.modulus is not None:
                raise ValueError("prime fields take no modulus")
        else:
            mod = tuple(int(c) for c in self.modulus or ())
            if len(mod) != self.m + 1 or mod[-1] != 1 or any(not 0 <= c < self.p for c in mod):
                raise ValueError(f"modulus must be monic of degree {self.m} over F_{self.p}")
            if not _is_irreducible(mod, self.p):
                raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
            object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    # -- element encoding --

    def to_coeffs(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def from_coeffs(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + c % self.p
        return v

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element index of {self!r}")
        return a

    def elements(self) -> range:
        return range(self.q)

    # -- arithmetic on element indices --

    @cached_property
    def _tables(self):
        q = self.q
        add = [[self._add_slow(a, b) for b in range(q)] for a in range(q)]
        mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        neg = [self._neg_slow(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        return add, mul, neg, inv

    @property
    def tabulated(self) -> bool:
        return self.m > 1 and self.q <= _TABLE_LIMIT

    def _add_slow(self, a, b):
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        return self.from_coeffs([(x + y) % self.p for x, y in zip(ca, cb)])

    def _neg_slow(self, a):
        return self.from_coeffs([-x % self.p for x in self.to_coeffs(a)])

    def _mul_slow(self, a, b):
        p = self.p
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            if x:
                for j, y in enumerate(cb):
                    prod[i + j] = (prod[i + j] + x * y) % p
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), p))

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.tabulated:
            return self._tables[0][a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return -a % self.p
        if self.p == 2:
            return a
        if self.tabulated:
            return self._tables[2][a]
        return self._neg_slow(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if self.tabulated:
            return self._tables[1][a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        if self.tabulated:
            return self._tables[3][a]
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def to_json(self) -> dict:
        d = {"p": self.p, "m": self.m}
        if self.m > 1:
            d["modulus"] = list(self.modulus)
        return d

    @classmethod
    def from_json(cls, d: dict) -> FieldSpec:
        m = int(d.get("m", 1))
        mod = d.get("modulus")
        return cls(int(d["p"]), m, tuple(mod) if m > 1 else None)


def field_new(q: int) -> FieldSpec:
    """Return F_q with the lexicographically smallest monic irreducible modulus."""
    p, m = factor_prime_power(int(q))
    if q > config.MAX_FIELD_ORDER:
        raise NotPrimePower(f"q={q} exceeds the supported cap {config.MAX_FIELD_ORDER}")
    if m == 1:
        return FieldSpec(p)
    return FieldSpec(p, m, _smallest_irreducible(p, m))


@dataclass(frozen=True)
class Felt:
    """A field element bound to its field, with operator support."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        self.field.check(self.value)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.to_coeffs(self.value)

    def _other(self, b: Felt) -> int:
        if not isinstance(b, Felt):
            return NotImplemented
        if b.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {b.field!r}")
        return b.value

    def __add__(self, b):
        return Felt(self.field, self.field.add(self.value, self._other(b)))

    def __sub__(self, b):
        return Felt(self.field, self.field.sub(self.value, self._other(b)))

    def __mul__(self, b):
        return Felt(self.field, self.field.mul(self.value, self._other(b)))

    def __neg__(self):
        return Felt(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return Felt(self.field, self.field.pow(self.value, e))

    def inverse(self) -> Felt:
        return Felt(self.field, self.field.inv(self.value))


def f_arith(a: Felt, b: Felt, kind: str) -> Felt:
    if kind == "neg":
        return -a
    ops = {"add": Felt.__add__, "sub": Felt.__sub__, "mul": Felt.__mul__}
    if kind not in ops:
        raise ValueError(f"unknown operation {kind!r}")
    return ops[kind](a, b)


def f_inv(a: Felt) -> Felt:
    return a.inverse()
