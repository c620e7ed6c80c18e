"""The Suzuki group Sz(8) and the unitary group SU3(4) as explicit matrix groups.

Matrices are keyed by their row-major entries packed ``bits`` bits apiece
(entry (0,0) in the most significant slot).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .autos import GroupMap
from .core.iso import brute_force_isomorphic
from .core.oracle import OracleGroup, Subgroup, generating_set, subgroup_as_group
from .errors import ConstructionError, ParameterError, ResourceError, UsageError
from .gf2m import GF2m, field
from .suzuki import SuzukiGroup, SuzukiParams, resolve_params


class MatrixCodec:
    """Pack/unpack n x n matrices over GF(2^k) to int64 keys and multiply them in bulk."""

    def __init__(self, F: GF2m, n: int):
        if n * n * F.m > 62:
            raise ParameterError("matrix does not fit in a 62-bit key")
        self.F = F
        self.n = n
        self.bits = F.m
        self.shifts = np.array([(n * n - 1 - i) * F.m for i in range(n * n)], dtype=np.int64)

    def pack(self, M) -> int:
        M = np.asarray(M, dtype=np.int64).reshape(-1)
        return int(np.bitwise_or.reduce(M << self.shifts))

    def vpack(self, M: np.ndarray) -> np.ndarray:
        flat = M.reshape(M.shape[:-2] + (self.n * self.n,))
        return np.bitwise_or.reduce(flat << self.shifts, axis=-1)

    def unpack(self, keys) -> np.ndarray:
        keys = np.asarray(keys, dtype=np.int64)
        flat = (keys[..., None] >> self.shifts) & (self.F.q - 1)
        return flat.reshape(keys.shape + (self.n, self.n))

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        prod = self.F.vmul(A[..., :, :, None], B[..., None, :, :])
        return np.bitwise_xor.reduce(prod, axis=-2)

    def mul_keys(self, a, b):
        return self.vpack(self.matmul(self.unpack(a), self.unpack(b)))

    def det(self, M: np.ndarray) -> np.ndarray:
        """Leibniz expansion; signs vanish in characteristic 2."""
        n = self.n
        out = np.zeros(M.shape[:-2], dtype=np.int64)
        for perm in itertools.permutations(range(n)):
            term = M[..., 0, perm[0]]
            for i in range(1, n):
                term = self.F.vmul(term, M[..., i, perm[i]])
            out ^= term
        return out

    def format(self, key: int) -> str:
        return "[" + ",".join(format(int(v), "x") for v in self.unpack(key).ravel()) + "]"


def closure_keys(codec: MatrixCodec, gen_keys: list[int], limit: int) -> np.ndarray:
    """Sorted keys of the group generated by the given matrices (breadth-first)."""
    gens = np.array(sorted(set(gen_keys)), dtype=np.int64)
    ident = codec.pack(np.eye(codec.n, dtype=np.int64))
    seen = np.array([ident], dtype=np.int64)
    frontier = seen.copy()
    while frontier.size:
        prods = np.unique(codec.mul_keys(frontier[:, None], gens[None, :]).ravel())
        new = np.setdiff1d(prods, seen, assume_unique=True)
        seen = np.union1d(seen, new)
        frontier = new
        if seen.size > limit:
            raise ConstructionError(f"closure exceeded the expected order {limit}")
    return seen


class MatrixGroup(OracleGroup):
    def __init__(self, codec: MatrixCodec, keys: np.ndarray, gen_keys: list[int], name: str):
        self.codec = codec
        super().__init__(
            keys,
            codec.mul_keys,
            codec.pack(np.eye(codec.n, dtype=np.int64)),
            gen_keys,
            name=name,
            formatter=codec.format,
        )

    def matrices(self, idx=None) -> np.ndarray:
        keys = self.keys if idx is None else self.keys[np.asarray(idx)]
        return self.codec.unpack(keys)

    def element_of(self, M) -> int:
        return int(self.index(np.int64(self.codec.pack(M))))


@dataclass
class AmbientGroup:
    """A simple group with its parametrised Sylow 2-subgroup."""

    tag: str
    group: MatrixGroup
    sylow: Subgroup
    sylow_params: SuzukiParams
    unipotent: dict[tuple[int, int], int]  # (a, b) -> element index
    torus: dict[int, int]  # lambda -> element index

    def sylow_group(self) -> OracleGroup:
        return subgroup_as_group(self.sylow, name=f"Syl2({self.tag})")


# -- Sz(8) -------------------------------------------------------------------------

SZ_ORDER = {8: 29120}


def _sz_degree(q: int) -> int:
    m = q.bit_length() - 1
    if q < 8 or q != 1 << m or m % 2 == 0:
        raise ParameterError(f"Sz(q) needs q = 2^(2t+1) >= 8, got {q}")
    if q not in SZ_ORDER:
        raise ResourceError(f"Sz({q}) exceeds the exhaustive-closure budget; only Sz(8) is built")
    return m


def build_sz(q: int = 8) -> AmbientGroup:
    """Sz(q) <= Sp4(q) from unipotent, torus and Weyl generators."""
    m = _sz_degree(q)
    t = (m - 1) // 2
    F = field(m)
    codec = MatrixCodec(F, 4)
    sig = lambda x: F.frobenius(t + 1, x)  # squares to the Frobenius x -> x^2

    def unip(a: int, b: int) -> np.ndarray:
        # transpose of the lower-triangular form; satisfies U(a,b)U(c,d) = U(a+c, b+d+a sig(c))
        low = np.array([
            [1, 0, 0, 0],
            [a, 1, 0, 0],
            [b, sig(a), 1, 0],
            [F.mul(F.mul(a, a), sig(a)) ^ F.mul(a, b) ^ sig(b), F.mul(a, sig(a)) ^ b, a, 1],
        ], dtype=np.int64)
        return low.T.copy()

    def torus(lam: int) -> np.ndarray:
        s = 1 << t
        d = [F.pow(lam, 1 + s), F.pow(lam, s), F.pow(lam, -s), F.pow(lam, -1 - s)]
        return np.diag(np.array(d, dtype=np.int64))

    weyl = np.fliplr(np.eye(4, dtype=np.int64))
    gen_keys = [codec.pack(unip(1 << i, 0)) for i in range(m)] + [codec.pack(unip(0, 1))]
    gen_keys += [codec.pack(torus(F.find_generator())), codec.pack(weyl)]
    keys = closure_keys(codec, gen_keys, SZ_ORDER[q])
    if keys.size != SZ_ORDER[q]:
        raise ConstructionError(f"Sz({q}) closure has {keys.size} elements, expected {SZ_ORDER[q]}")
    G = MatrixGroup(codec, keys, gen_keys, f"sz({q})")
    if np.any(codec.det(G.matrices()) != 1):
        raise ConstructionError("a generated matrix has determinant != 1")
    uni = {(a, b): G.element_of(unip(a, b)) for a in range(q) for b in range(q)}
    tor = {lam: G.element_of(torus(lam)) for lam in range(1, q)}
    P = Subgroup.from_indices(G, sorted(uni.values()))
    return AmbientGroup(f"sz({q})", G, P, SuzukiParams("A", m, t + 1), uni, tor)


# -- SU3(4) ------------------------------------------------------------------------

SU3_ORDER = {4: 62400}


def _su3_degree(q: int) -> int:
    m = q.bit_length() - 1
    if q < 4 or q != 1 << m:
        raise ParameterError(f"SU3(q) needs q = 2^m >= 4, got {q}")
    if q not in SU3_ORDER:
        raise ResourceError(f"SU3({q}) exceeds the exhaustive-closure budget; only SU3(4) is built")
    return m


def hermitian_ok(codec: MatrixCodec, M: np.ndarray, q: int) -> np.ndarray:
    """M^T J M^(q) == J for J the antidiagonal Gram matrix, elementwise over a stack."""
    F = codec.F
    J = np.fliplr(np.eye(codec.n, dtype=np.int64))
    Mq = F.vpow(M, q)
    lhs = codec.matmul(codec.matmul(np.swapaxes(M, -1, -2), np.broadcast_to(J, M.shape)), Mq)
    return np.all(lhs == J, axis=(-1, -2))


def build_su3(q: int = 4) -> AmbientGroup:
    """SU3(q) over GF(q^2) preserving the antidiagonal Hermitian form."""
    m = _su3_degree(q)
    F = field(2 * m)
    codec = MatrixCodec(F, 3)
    us: dict[tuple[int, int], np.ndarray] = {}
    for a in range(F.q):
        for b in range(F.q):
            if b ^ F.pow(b, q) == F.pow(a, q + 1):
                us[(a, b)] = np.array([[1, a, b], [0, 1, F.pow(a, q)], [0, 0, 1]], dtype=np.int64)

    def torus(lam: int) -> np.ndarray:
        return np.diag(np.array([lam, F.pow(lam, q - 1), F.pow(lam, -q)], dtype=np.int64))

    weyl = np.fliplr(np.eye(3, dtype=np.int64))
    xi = F.find_generator()
    # the unipotent group is generated by lifts of an F_2-basis of the a-coordinate plus its centre
    lifts: dict[int, np.ndarray] = {}
    for (a, b), u in sorted(us.items()):
        lifts.setdefault(a, u)
    gen_list = [lifts[1 << i] for i in range(2 * m)]
    gen_list += [us[(0, b)] for (a, b) in sorted(us) if a == 0 and b]
    gen_keys = sorted({codec.pack(g) for g in gen_list})
    gen_keys += [codec.pack(torus(xi)), codec.pack(weyl)]
    mats = np.array([codec.unpack(k) for k in gen_keys])
    if not np.all(hermitian_ok(codec, mats, q)):
        raise ConstructionError("a generator does not preserve the Hermitian form")
    keys = closure_keys(codec, gen_keys, SU3_ORDER[q])
    if keys.size != SU3_ORDER[q]:
        raise ConstructionError(f"SU3({q}) closure has {keys.size} elements, expected {SU3_ORDER[q]}")
    G = MatrixGroup(codec, keys, gen_keys, f"su3({q})")
    allm = G.matrices()
    if not np.all(hermitian_ok(codec, allm, q)):
        raise ConstructionError("a generated matrix violates the Hermitian form")
    if np.any(codec.det(allm) != 1):
        raise ConstructionError("a generated matrix has determinant != 1")
    uni = {ab: G.element_of(u) for ab, u in us.items()}
    tor = {lam: G.element_of(torus(lam)) for lam in range(1, F.q)}
    P = Subgroup.from_indices(G, sorted(uni.values()))
    return AmbientGroup(f"su3({q})", G, P, resolve_params("B", m, 0, "auto"), uni, tor)


def build_ambient(tag: str) -> AmbientGroup:
    tag = tag.strip().lower()
    if tag.startswith("sz(") and tag.endswith(")"):
        return build_sz(int(tag[3:-1], 0))
    if tag.startswith("su3(") and tag.endswith(")"):
        return build_su3(int(tag[4:-1], 0))
    raise UsageError(f"unknown ambient group {tag!r}")


# -- Sylow identification and trivial intersection -------------------------------

def identify_sylow(amb: AmbientGroup, candidate: SuzukiParams | OracleGroup):
    """Isomorphism from the Sylow subgroup onto the candidate group, or None."""
    S = amb.sylow_group()
    if S.order != 64:
        raise ResourceError("identification is limited to Sylow subgroups of order 64")
    P = candidate if isinstance(candidate, OracleGroup) else SuzukiGroup(candidate)
    return brute_force_isomorphic(S, P)


@dataclass
class TIReport:
    group: str
    sylow_order: int
    conjugates: int
    ti: bool
    normalizer_order: int
    orbit_stabilizer_ok: bool

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "sylow_order": self.sylow_order,
            "conjugates": self.conjugates,
            "ti": self.ti,
            "normalizer_order": self.normalizer_order,
            "orbit_stabilizer_ok": self.orbit_stabilizer_ok,
        }


def conjugate_subgroup(P: Subgroup, g: int) -> Subgroup:
    G = P.parent
    return Subgroup.from_indices(G, G.conj(P.indices, g))


def normalizer_order(P: Subgroup) -> int:
    """|N_G(P)| by testing every g against a generating set of P."""
    G = P.parent
    idx = generating_set(P)
    count = 0
    step = max(1, (1 << 20) // max(1, idx.size))
    for s in range(0, G.order, step):
        g = G.all[s:s + step]
        conj = G.conj(idx[None, :], g[:, None])
        count += int(np.all(P.mask[conj], axis=1).sum())
    return count


def ti_check(amb_or_group, P: Subgroup | None = None) -> TIReport:
    """Orbit of P under conjugation, with pairwise intersections of distinct conjugates."""
    if isinstance(amb_or_group, AmbientGroup):
        G, P, name = amb_or_group.group, amb_or_group.sylow, amb_or_group.tag
    else:
        G, name = amb_or_group, amb_or_group.name
        if P is None:
            raise UsageError("a Sylow subgroup is required")
    seen = {P.mask.tobytes(): P}
    frontier = [P]
    while frontier:
        nxt = []
        for H in frontier:
            for g in G.gens:
                K = conjugate_subgroup(H, int(g))
                key = K.mask.tobytes()
                if key not in seen:
                    seen[key] = K
                    nxt.append(K)
        frontier = nxt
    conj = [seen[k] for k in sorted(seen)]
    M = np.array([H.mask for H in conj])
    inter = M.astype(np.int32) @ M.T.astype(np.int32)
    off = inter[~np.eye(len(conj), dtype=bool)]
    ti = bool(np.all(off == 1))
    nord = normalizer_order(P)
    return TIReport(name, P.order, len(conj), ti, nord, len(conj) * nord == G.order)


def torus_automorphism(amb: AmbientGroup, t: int) -> GroupMap:
    """u -> t u t^-1 on the Sylow subgroup, as a map of the standalone Sylow group."""
    G = amb.group
    P = amb.sylow
    img = G.mul(G.mul(t, P.indices), G.inv(t))
    if not np.all(P.mask[img]):
        raise UsageError("the element does not normalise the Sylow subgroup")
    S = amb.sylow_group()
    phi = GroupMap(S, S.index(G.keys[img]), "torus")
    if not phi.is_automorphism():
        raise ConstructionError("conjugation map failed the automorphism check")
    return phi


def frobenius_map(amb: AmbientGroup) -> GroupMap:
    """Entrywise x -> x^2 on the matrix group (an outer automorphism for Sz(8))."""
    G = amb.group
    F = G.codec.F
    img = G.codec.vpack(F.vpow(G.matrices(), 2))
    phi = GroupMap(G, G.index(img), "frob")
    if not phi.is_automorphism():
        raise ConstructionError("entrywise Frobenius is not an automorphism")
    return phi
