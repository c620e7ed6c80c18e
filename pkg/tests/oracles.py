"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

from itertools import product


def clmul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def polymod(a: int, p: int) -> int:
    dp = p.bit_length()
    while a.bit_length() >= dp:
        a ^= p << (a.bit_length() - dp)
    return a


def fmul(a: int, b: int, p: int) -> int:
    return polymod(clmul(a, b), p)


def fpow(a: int, e: int, p: int) -> int:
    r = 1
    for _ in range(e):
        r = fmul(r, a, p)
    return r


def fsqrt(a: int, q: int, p: int) -> int:
    return next(x for x in range(q) if fmul(x, x, p) == a)


def frob(a: int, l: int, p: int) -> int:
    for _ in range(l):
        a = fmul(a, a, p)
    return a


def order_by_iteration(a: int, p: int) -> int:
    x, n = a, 1
    while x != 1:
        x = fmul(x, a, p)
        n += 1
    return n


def suzuki_law(family: str, l: int, eps: int | None, q: int, p: int):
    """Tuple multiplication straight from the family formulas."""
    th = lambda x, k=1: frob(x, l * k, p)
    mul = lambda a, b: fmul(a, b, p)

    if family == "A":
        def law(x, y):
            (a1, b1), (a2, b2) = x, y
            return (a1 ^ a2, b1 ^ b2 ^ mul(a1, th(a2)))
        return law

    def law(x, y):
        (a1, b1, c1), (a2, b2, c2) = x, y
        corr = mul(a1, th(a2))
        if family == "B":
            corr ^= mul(eps, mul(a1, th(b2))) ^ mul(b1, th(b2))
        elif family == "C":
            corr ^= mul(eps, mul(fsqrt(a1, q, p), th(mul(b2, b2)))) ^ mul(b1, b2)
        elif family == "D":
            corr ^= mul(eps, mul(th(a1, 3), th(b2))) ^ mul(b1, th(b2, 2))
        return (a1 ^ a2, b1 ^ b2, c1 ^ c2 ^ corr)
    return law


def tuples(family: str, q: int):
    n = 2 if family == "A" else 3
    return list(product(range(q), repeat=n))


def pairwise_class_count(elements, mul, inv) -> int:
    """Classes by testing every conjugate g^-1 x g; quadratic."""
    seen: set = set()
    count = 0
    for x in elements:
        if x in seen:
            continue
        count += 1
        for g in elements:
            seen.add(mul(mul(inv(g), x), g))
    return count


def table_inverse(elements, mul, identity):
    inv = {}
    for x in elements:
        for y in elements:
            if mul(x, y) == identity:
                inv[x] = y
                break
    return inv


def partitions_of_squares(total: int, linear: int, count: int, max_degree: int):
    """Multisets of degrees 2^i >= 2 (2-groups) with sum of squares and count fixed."""
    out = []
    degs = [1 << i for i in range(1, max_degree.bit_length()) if (1 << i) <= max_degree]

    def rec(i, remaining, slots, acc):
        if remaining == 0 and slots == 0:
            out.append(tuple(acc))
            return
        if i == len(degs) or remaining <= 0 or slots <= 0:
            return
        d = degs[i]
        for k in range(slots + 1):
            if k * d * d > remaining:
                break
            rec(i + 1, remaining - k * d * d, slots - k, acc + [d] * k)

    rec(0, total - linear, count - linear, [])
    return out


def complex_degrees(elements, mul, inv, seed: int = 0) -> list[int]:
    """Character degrees by Burnside's method over the complex numbers, from a raw law."""
    import numpy as np

    classes, seen = [], set()
    for x in elements:
        if x in seen:
            continue
        cls = {mul(mul(inv(g), x), g) for g in elements}
        seen |= cls
        classes.append(sorted(cls))
    where = {x: i for i, c in enumerate(classes) for x in c}
    r, n = len(classes), len(elements)
    mats = []
    for cj in classes:
        M = np.zeros((r, r))
        for l, cl in enumerate(classes):
            z = cl[0]
            for x in cj:
                M[where[mul(inv(x), z)], l] += 1
        mats.append(M)
    rng = np.random.default_rng(seed)
    A = sum(rng.standard_normal() * M for M in mats)
    _, V = np.linalg.eig(A)
    ident = where[min(elements, key=lambda t: any(t))]
    star = [where[inv(c[0])] for c in classes]
    sizes = np.array([len(c) for c in classes], dtype=float)
    out = []
    for k in range(r):
        w = V[:, k] / V[ident, k]
        s = float(np.real(sum(w[j] * w[star[j]] / sizes[j] for j in range(r))))
        out.append(round((n / s) ** 0.5))
    return sorted(out)
