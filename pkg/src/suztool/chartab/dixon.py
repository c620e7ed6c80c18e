"""Character degrees by simultaneous diagonalisation of class matrices modulo a prime."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt

import numpy as np

from ..core.classes import ConjugacyData, conjugacy_classes, inverse_classes
from ..core.oracle import OracleGroup
from ..errors import InternalError
from .modp import charpoly, inv_mod, is_prime, nullspace, poly_roots, rref


def dixon_prime(G: OracleGroup) -> int:
    """Least prime p = 1 mod exp(G) with p > 2 sqrt|G|."""
    e = G.exponent
    n = G.order
    p = e + 1
    while not (is_prime(p) and p * p > 4 * n):
        p += e
    return p


class ClassMatrices:
    """(M_j)[k, l] = #{x in C_j : x^-1 z_l in C_k}, built on first use."""

    def __init__(self, G: OracleGroup, data: ConjugacyData):
        self.G = G
        self.data = data
        self._cache: dict[int, np.ndarray] = {}

    def __getitem__(self, j: int) -> np.ndarray:
        if j not in self._cache:
            G, d = self.G, self.data
            r = d.count
            xs = G.inverses[d.members(j)]
            k = d.class_of[G.mul(xs[:, None], d.reps[None, :])]  # (|C_j|, r)
            M = np.zeros((r, r), dtype=np.int64)
            cols = np.broadcast_to(np.arange(r), k.shape)
            np.add.at(M, (k.ravel(), cols.ravel()), 1)
            self._cache[j] = M
        return self._cache[j]


def class_matrix(G: OracleGroup, j: int, data: ConjugacyData | None = None) -> np.ndarray:
    return ClassMatrices(G, data or conjugacy_classes(G))[j]


def _pivot_form(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Column basis B rescaled so that B[pivots] is the identity."""
    R, piv = rref(B.T, p)
    return R[: len(piv)].T.copy(), piv


def common_eigenvectors(mats: ClassMatrices, r: int, p: int, identity_class: int) -> np.ndarray:
    """Rows are the common eigenvectors w of all class matrices, normalised by w[identity] = 1."""
    spaces = [(np.eye(r, dtype=np.int64), list(range(r)))]
    for j in range(r):
        if all(B.shape[1] == 1 for B, _ in spaces):
            break
        if j == identity_class:
            continue
        M = mats[j]
        nxt = []
        for B, piv in spaces:
            k = B.shape[1]
            if k == 1:
                nxt.append((B, piv))
                continue
            A = (M[piv] @ B) % p
            roots = poly_roots(charpoly(A, p), p)
            total = 0
            for lam in roots:
                N = nullspace((A - lam * np.eye(k, dtype=np.int64)) % p, p)
                if N.shape[1] == 0:
                    continue
                total += N.shape[1]
                nxt.append(_pivot_form((B @ N) % p, p))
            if total != k:
                raise InternalError(f"eigenspaces of class matrix {j} do not span (got {total} of {k})")
        spaces = nxt
    if any(B.shape[1] != 1 for B, _ in spaces):
        raise InternalError("class matrices failed to split the space into lines")
    W = np.array([B[:, 0] for B, _ in spaces], dtype=np.int64)
    c = W[:, identity_class]
    if np.any(c == 0):
        raise InternalError("common eigenvector with zero identity coordinate")
    inv = np.array([inv_mod(int(v), p) for v in c], dtype=np.int64)
    return (W * inv[:, None]) % p


@dataclass
class DegreeTable:
    group: str
    order: int
    prime: int
    degrees: list[int]
    central_characters: np.ndarray  # rows aligned with degrees; omega_chi(K_j) mod p
    class_sizes: np.ndarray

    @property
    def count(self) -> int:
        return len(self.degrees)

    def multiset(self) -> list[list[int]]:
        return [[d, m] for d, m in sorted(Counter(self.degrees).items())]

    def values(self) -> np.ndarray:
        """chi(g_j) mod p = d * omega_j / |C_j|."""
        p = self.prime
        inv_sizes = np.array([inv_mod(int(s), p) for s in self.class_sizes], dtype=np.int64)
        d = np.array(self.degrees, dtype=np.int64) % p
        return (self.central_characters * inv_sizes[None, :] % p) * d[:, None] % p


def character_degrees(G: OracleGroup, data: ConjugacyData | None = None, threads: int = 1) -> DegreeTable:
    data = data or conjugacy_classes(G, threads)
    r = data.count
    n = G.order
    p = dixon_prime(G)
    ident = int(data.class_of[G.identity])
    if r == 1:
        W = np.ones((1, 1), dtype=np.int64)
    else:
        W = common_eigenvectors(ClassMatrices(G, data), r, p, ident)
    star = inverse_classes(G, data)
    inv_sizes = np.array([inv_mod(int(s), p) for s in data.sizes], dtype=np.int64)
    S = (W * W[:, star] % p) * inv_sizes[None, :] % p
    S = S.sum(axis=1) % p
    root = isqrt(n)
    sq = {(d * d) % p: d for d in range(1, root + 1)}
    degrees = []
    for s in S:
        if s == 0:
            raise InternalError("vanishing orthogonality sum")
        target = (n % p) * inv_mod(int(s), p) % p
        if target not in sq:
            raise InternalError("no admissible degree for a central character")
        degrees.append(sq[target])
    order = sorted(range(r), key=lambda i: (degrees[i], tuple(W[i].tolist())))
    table = DegreeTable(G.name, n, p, [degrees[i] for i in order], W[order], data.sizes.copy())
    check_degree_table(table, star)
    return table


def check_degree_table(T: DegreeTable, star: np.ndarray) -> None:
    """Integrality and both orthogonality relations modulo p."""
    n, p = T.order, T.prime
    if sum(d * d for d in T.degrees) != n:
        raise InternalError(f"sum of squared degrees {sum(d * d for d in T.degrees)} != {n}")
    if any(n % d for d in T.degrees):
        raise InternalError("a degree does not divide the group order")
    if not orthogonality_ok(T, star):
        raise InternalError("orthogonality relations fail modulo p")


def orthogonality_ok(T: DegreeTable, star: np.ndarray) -> bool:
    p = T.prime
    X = T.values()
    Xs = X[:, star]
    sizes = np.asarray(T.class_sizes, dtype=np.int64) % p
    rows = (X * sizes[None, :] % p) @ Xs.T % p
    if not np.array_equal(rows, (np.eye(T.count, dtype=np.int64) * (T.order % p)) % p):
        return False
    cols = X.T @ Xs % p
    centr = np.array([(T.order // int(s)) % p for s in T.class_sizes], dtype=np.int64)
    return bool(np.array_equal(cols, np.diag(centr) % p))
