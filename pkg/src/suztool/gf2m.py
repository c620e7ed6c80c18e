"""Arithmetic in GF(2^m), 1 <= m <= 16, in the polynomial basis.

Elements are plain Python ints (or numpy integer arrays for the vectorised
helpers): bit ``i`` is the coefficient of ``x^i``. Addition is XOR.
"""

from __future__ import annotations

import re
from functools import cached_property
from math import gcd

import numpy as np

from .errors import DomainError, ParameterError, SpecParseError

MAX_DEGREE = 16


def poly_degree(p: int) -> int:
    return p.bit_length() - 1


def poly_mod(a: int, b: int) -> int:
    """Remainder of a modulo b over GF(2)."""
    db = poly_degree(b)
    while a and poly_degree(a) >= db:
        a ^= b << (poly_degree(a) - db)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree 1..deg(p)//2."""
    d = poly_degree(p)
    if d < 1:
        return False
    for divisor in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, divisor) == 0:
            return False
    return True


def default_poly(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m."""
    for p in range(1 << m, 1 << (m + 1)):
        if is_irreducible(p):
            return p
    raise AssertionError("unreachable: irreducibles exist in every degree")


def schoolbook_mul(a: int, b: int, poly: int) -> int:
    """Carry-less multiply then long division; kept table-free on purpose."""
    prod = 0
    while b:
        if b & 1:
            prod ^= a
        a <<= 1
        b >>= 1
    return poly_mod(prod, poly)


class GF2m:
    """The field GF(2^m) for a fixed irreducible reduction polynomial.

    Instances are immutable once constructed; the log/antilog tables are
    built eagerly so that concurrent readers never race on them.
    """

    def __init__(self, m: int, poly: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise ParameterError(f"extension degree must be in 1..{MAX_DEGREE}, got {m}")
        if poly is None:
            poly = default_poly(m)
        if poly_degree(poly) != m:
            raise ParameterError(f"polynomial {poly:#x} does not have degree {m}")
        if not is_irreducible(poly):
            raise ParameterError(f"polynomial {poly:#x} is reducible over GF(2)")
        self.m = m
        self.poly = poly
        self.q = 1 << m
        self._generator = self._search_generator()
        n = self.q - 1
        exp = np.zeros(2 * n, dtype=np.int64)
        log = np.zeros(self.q, dtype=np.int64)
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = schoolbook_mul(x, self._generator, poly)
        exp[n:] = exp[:n]
        exp.setflags(write=False)
        log.setflags(write=False)
        self._exp = exp
        self._log = log
        self._frob_tables: dict[int, np.ndarray] = {}
        for l in range(m):
            self._frob_tables[l] = self._build_frob_table(l)

    # -- identity -------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, GF2m) and (self.m, self.poly) == (other.m, other.poly)

    def __hash__(self) -> int:
        return hash((self.m, self.poly))

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, poly={self.poly:#x})"

    def spec(self) -> str:
        return f"gf(m={self.m},poly={self.poly:#x})"

    @staticmethod
    def format(a: int) -> str:
        return format(int(a), "x")

    @cached_property
    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise DomainError(f"{a!r} is not an element of GF(2^{self.m})")
        return a

    # -- scalar arithmetic ------------------------------------------------
    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        return self.pow(a, self.q - 2)

    def sqrt(self, a: int) -> int:
        """The unique square root, a^(2^(m-1))."""
        return self.frobenius(self.m - 1, a)

    def frobenius(self, l: int, a: int) -> int:
        """a^(2^l) by l repeated squarings."""
        for _ in range(l % self.m):
            a = self.mul(a, a)
        return a

    def frobenius_order(self, l: int) -> int:
        return self.m // gcd(self.m, l % self.m) if l % self.m else 1

    def element_order(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for p in _prime_factors(n):
            while order % p == 0 and self.pow(a, order // p) == 1:
                order //= p
        return order

    def find_generator(self) -> int:
        return self._generator

    def fixed_subfield(self, l: int) -> frozenset[int]:
        table = self._frob_tables[l % self.m]
        return frozenset(int(x) for x in np.flatnonzero(table == self.elements))

    def _search_generator(self) -> int:
        n = self.q - 1
        primes = _prime_factors(n)
        for a in range(1, self.q):
            if all(_slow_pow(a, n // p, self.poly) != 1 for p in primes):
                return a
        raise AssertionError("unreachable: the multiplicative group is cyclic")

    def _build_frob_table(self, l: int) -> np.ndarray:
        t = self.elements.copy()
        for _ in range(l):
            t = self.vmul(t, t)
        t.setflags(write=False)
        return t

    # -- vectorised arithmetic (numpy int arrays) -------------------------
    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("zero has no multiplicative inverse")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def vfrob(self, l: int, a):
        return self._frob_tables[l % self.m][np.asarray(a, dtype=np.int64)]

    def vsqrt(self, a):
        return self.vfrob(self.m - 1, a)

    def vpow(self, a, e: int):
        """Elementwise a^e for a fixed integer exponent e >= 0."""
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        r = self._exp[(self._log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, r)


def _slow_pow(a: int, e: int, poly: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = schoolbook_mul(result, a, poly)
        a = schoolbook_mul(a, a, poly)
        e >>= 1
    return result


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


_FIELD_SPEC = re.compile(r"^\s*gf\(\s*m\s*=\s*(\d+)\s*(?:,\s*poly\s*=\s*(0x[0-9a-fA-F]+|\d+)\s*)?\)\s*$")


def parse_field_spec(text: str) -> GF2m:
    """Parse ``gf(m=3,poly=0xb)``; the polynomial is validated for irreducibility."""
    match = _FIELD_SPEC.match(text)
    if not match:
        raise SpecParseError(f"not a field spec: {text!r}")
    m = int(match.group(1))
    poly = int(match.group(2), 0) if match.group(2) else None
    return GF2m(m, poly)


_FIELD_CACHE: dict[tuple[int, int | None], GF2m] = {}


def field(m: int, poly: int | None = None) -> GF2m:
    """Shared immutable field instances (tables are built once per (m, poly))."""
    key = (m, poly)
    if key not in _FIELD_CACHE:
        f = GF2m(m, poly)
        _FIELD_CACHE[key] = f
        _FIELD_CACHE[(m, f.poly)] = f
    return _FIELD_CACHE[key]
