"""Dense linear algebra over GF(p) for word-sized primes, on int64 numpy arrays."""

from __future__ import annotations

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, -1, p)


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots: list[int] = []
    r, c = 0, 0
    while r < rows and c < cols:
        live = np.flatnonzero(R[r:, c:].any(axis=0))
        if live.size == 0:
            break
        c += int(live[0])
        k = r + int(np.flatnonzero(R[r:, c])[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        R[r] = (R[r] * inv_mod(R[r, c], p)) % p
        f = R[:, c].copy()
        f[r] = 0
        nzr = np.flatnonzero(f)
        if nzr.size:
            R[nzr] = (R[nzr] - f[nzr, None] * R[r][None, :]) % p
        pivots.append(c)
        r += 1
        c += 1
    return R, pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : A x = 0} as the columns of the returned matrix."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = rref(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    N = np.zeros((n, len(free)), dtype=np.int64)
    for t, fcol in enumerate(free):
        N[fcol, t] = 1
        for i, pc in enumerate(piv):
            N[pc, t] = (-R[i, fcol]) % p
    return N


def hessenberg(A: np.ndarray, p: int) -> np.ndarray:
    """Upper Hessenberg matrix similar to A."""
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    for c in range(n - 2):
        nz = np.flatnonzero(H[c + 1:, c])
        if nz.size == 0:
            continue
        k = c + 1 + int(nz[0])
        if k != c + 1:
            H[[c + 1, k]] = H[[k, c + 1]]
            H[:, [c + 1, k]] = H[:, [k, c + 1]]
        piv_inv = inv_mod(H[c + 1, c], p)
        f = (H[c + 2:, c] * piv_inv) % p
        nzf = np.flatnonzero(f)
        if nzf.size == 0:
            continue
        rows = c + 2 + nzf
        # row_i -= f_i * row_{c+1}; then col_{c+1} += sum f_i * col_i
        H[rows] = (H[rows] - f[nzf, None] * H[c + 1][None, :]) % p
        H[:, c + 1] = (H[:, c + 1] + H[:, rows] @ f[nzf]) % p
    return H


def charpoly(A: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (constant term first) of det(xI - A), monic of degree n."""
    H = hessenberg(A, p)
    n = H.shape[0]
    polys = [np.array([1], dtype=np.int64)]
    for k in range(1, n + 1):
        # p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik * (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
        prev = polys[k - 1]
        nxt = np.zeros(k + 1, dtype=np.int64)
        nxt[1:] = prev
        nxt[:k] = (nxt[:k] - H[k - 1, k - 1] * prev) % p
        t = 1
        for i in range(k - 1, 0, -1):
            t = (t * H[i, i - 1]) % p
            if t == 0:
                break
            coef = (t * H[i - 1, k - 1]) % p
            if coef:
                q = polys[i - 1]
                nxt[: len(q)] = (nxt[: len(q)] - coef * q) % p
        polys.append(nxt % p)
    return polys[n]


def poly_roots(coeffs: np.ndarray, p: int) -> list[int]:
    """All roots in GF(p), by evaluation at every field element."""
    x = np.arange(p, dtype=np.int64)
    val = np.zeros(p, dtype=np.int64)
    for c in coeffs[::-1]:
        val = (val * x + int(c)) % p
    return [int(r) for r in np.flatnonzero(val == 0)]


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """A @ B mod p without int64 overflow for p < 2^31 and moderate inner size."""
    A = np.asarray(A, dtype=np.int64) % p
    B = np.asarray(B, dtype=np.int64) % p
    if p < (1 << 20) and A.shape[-1] < (1 << 20):
        return (A @ B) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = (out + np.outer(A[:, k], B[k])) % p
    return out
