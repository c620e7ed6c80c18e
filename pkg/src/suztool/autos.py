"""Automorphisms of Suzuki 2-groups and semidirect products P x| E."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Sequence

import numpy as np

from .core.iso import ISO_LIMIT, isomorphisms
from .core.oracle import OracleGroup, Subgroup, subgroup_as_group
from .core.structure import center, quotient
from .errors import InternalError, ResourceError, UsageError
from .suzuki import SuzukiGroup

RANDOM_PAIRS = 100_000
EXHAUSTIVE_PAIRS = 512


class GroupMap:
    """A map G -> G given by its image array over element indices."""

    def __init__(self, group: OracleGroup, images, label: str = ""):
        images = np.asarray(images, dtype=np.int64)
        if images.shape != (group.order,):
            raise UsageError("image array does not match the group order")
        images = images.copy()
        images.setflags(write=False)
        self.group = group
        self.images = images
        self.label = label

    def __repr__(self) -> str:
        return f"<GroupMap {self.label or '?'} on {self.group.name}>"

    def __call__(self, x):
        return self.images[np.asarray(x)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupMap) and other.group is self.group and np.array_equal(other.images, self.images)

    def __hash__(self) -> int:
        return hash(self.images.tobytes())

    def compose(self, other: "GroupMap") -> "GroupMap":
        """self after other: x -> self(other(x))."""
        return GroupMap(self.group, self.images[other.images], f"{self.label}*{other.label}")

    def __matmul__(self, other: "GroupMap") -> "GroupMap":
        return self.compose(other)

    def inverse(self) -> "GroupMap":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(inv))
        return GroupMap(self.group, inv, f"{self.label}^-1")

    def power(self, k: int) -> "GroupMap":
        if k < 0:
            return self.inverse().power(-k)
        result = identity_map(self.group)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    @cached_property
    def order(self) -> int:
        """Order as a permutation: lcm of cycle lengths."""
        seen = np.zeros(len(self.images), dtype=bool)
        out = 1
        for start in range(len(self.images)):
            if seen[start]:
                continue
            n, x = 0, start
            while not seen[x]:
                seen[x] = True
                x = int(self.images[x])
                n += 1
            out = lcm(out, n)
        return out

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, self.group.all))

    def is_bijective(self) -> bool:
        return len(np.unique(self.images)) == len(self.images)

    def is_automorphism(self) -> bool:
        """Exact: phi(x g) = phi(x) phi(g) for every x and every generator g."""
        G = self.group
        if not self.is_bijective() or self.images[G.identity] != G.identity:
            return False
        x = G.all
        for g in G.gens:
            if not np.array_equal(self.images[G.mul(x, g)], G.mul(self.images, self.images[g])):
                return False
        return True

    def check_pairs(self, rng: np.random.Generator | None = None) -> bool:
        """phi(xy) = phi(x)phi(y) on all pairs for small groups, else on random pairs."""
        G = self.group
        if G.order <= EXHAUSTIVE_PAIRS:
            x = G.all[:, None]
            y = G.all[None, :]
        else:
            rng = rng or np.random.default_rng(0)
            x = rng.integers(0, G.order, RANDOM_PAIRS)
            y = rng.integers(0, G.order, RANDOM_PAIRS)
        return bool(np.array_equal(self.images[G.mul(x, y)], G.mul(self.images[x], self.images[y])))

    def maps_subgroup(self, N: Subgroup) -> bool:
        return bool(np.all(N.mask[self.images[N.indices]]))


def identity_map(G: OracleGroup) -> GroupMap:
    return GroupMap(G, G.all, "id")


class AutSubgroup(Sequence):
    """A group of automorphisms held as a matrix of image arrays (one row per map)."""

    def __init__(self, group: OracleGroup, images: np.ndarray, generators: list[GroupMap] | None = None,
                 label: str = ""):
        images = np.asarray(images)
        order = np.lexsort(images.T[::-1]) if len(images) else np.zeros(0, dtype=np.int64)
        images = images[order]
        images.setflags(write=False)
        self.group = group
        self.images = images
        self.generators = generators
        self.label = label

    @classmethod
    def generated_by(cls, group: OracleGroup, gens: list[GroupMap], label: str = "") -> "AutSubgroup":
        return cls(group, closure_of_maps(group, gens), gens, label)

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return GroupMap(self.group, self.images[i], f"{self.label}[{i}]")

    @property
    def order(self) -> int:
        return len(self.images)

    @property
    def odd_part(self) -> int:
        n = self.order
        while n % 2 == 0 and n:
            n //= 2
        return n

    def contains(self, phi: GroupMap) -> bool:
        return bool(np.any(np.all(self.images == phi.images[None, :], axis=1)))

    def orbits(self, points) -> list[list[int]]:
        """Orbits on ``points`` (element indices) under every map of the group."""
        points = [int(p) for p in points]
        pset = set(points)
        seen: set[int] = set()
        out = []
        for p in sorted(points):
            if p in seen:
                continue
            orb = sorted(set(int(v) for v in self.images[:, p]))
            if not set(orb) <= pset:
                raise UsageError("the point set is not invariant")
            seen.update(orb)
            out.append(orb)
        return out

    def is_closed(self) -> bool:
        """Does the set equal the group generated by its own elements?"""
        rows = {r.tobytes() for r in self.images}
        if self.group.all.tobytes() not in rows:
            return False
        reached: set[bytes] = set()
        gens: list[GroupMap] = []
        for r in self.images:
            if r.tobytes() in reached:
                continue
            gens.append(GroupMap(self.group, r))
            reached = {h.tobytes() for h in closure_of_maps(self.group, gens, limit=len(rows))}
            if not reached <= rows:
                return False
        return reached == rows


def closure_of_maps(G: OracleGroup, gens: list[GroupMap], limit: int = 1 << 16) -> np.ndarray:
    """All compositions of the generators (they generate a finite permutation group)."""
    ident = G.all.copy()
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in gens:
                h = g.images[f]
                key = h.tobytes()
                if key not in seen:
                    seen[key] = h
                    nxt.append(h)
                    if len(seen) > limit:
                        raise ResourceError(f"automorphism closure exceeded {limit} maps")
        frontier = nxt
    return np.array(list(seen.values()), dtype=np.int64)


# -- explicit maps -----------------------------------------------------------

def _require_family(P, families: str) -> None:
    if not isinstance(P, SuzukiGroup) or P.family not in families:
        raise UsageError(f"needs a Suzuki group of type {'/'.join(families)}")


def singer_map(P: SuzukiGroup, xi: int) -> GroupMap:
    """(alpha, beta) -> (xi*alpha, xi*theta(xi)*beta)."""
    _require_family(P, "A")
    F = P.field
    F.check(xi)
    if xi == 0:
        raise UsageError("xi must be nonzero")
    c = F.mul(xi, F.frobenius(P.params.l, xi))
    a, b = P.vunpack(P.keys)
    phi = GroupMap(P, P.index(P.vpack(F.vmul(xi, a), F.vmul(c, b))), f"singer({xi:#x})")
    if not phi.is_automorphism():
        raise InternalError(f"singer({xi:#x}) failed the automorphism check")
    return phi


def field_map(P: SuzukiGroup, j: int) -> GroupMap:
    """Frobenius x -> x^(2^j) on every coordinate."""
    _require_family(P, "ABCD")
    if not 0 <= j < P.m:
        raise UsageError(f"j must be in 0..{P.m - 1}")
    F = P.field
    coords = [F.vfrob(j, c) for c in P.vunpack(P.keys)]
    phi = GroupMap(P, P.index(P.vpack(*coords)), f"frob({j})")
    if not phi.is_automorphism():
        raise UsageError(f"frob(j={j}) is not an automorphism of {P.name} (it moves epsilon)")
    return phi


# -- restricted automorphism search -------------------------------------------

def _correction_form(P: SuzukiGroup):
    """f(v1, v2) with v = (alpha, beta), vectorised; biadditive in each argument."""
    return lambda a1, b1, a2, b2: P.correction(a1, b1, a2, b2)


@dataclass
class SemilinearFamily:
    """Parameters (sigma, M, c) of every map found by the restricted search."""

    sigma: np.ndarray
    matrix: np.ndarray  # rows (a, b, c', d): (alpha, beta) -> (a s(alpha) + b s(beta), c' s(alpha) + d s(beta))
    scale: np.ndarray


def _semilinear_A(P: SuzukiGroup) -> tuple[list[np.ndarray], list[str]]:
    F = P.field
    a0, b0 = P.vunpack(P.keys)
    rows, labels = [], []
    for s in range(P.m):
        sa, sb = F.vfrob(s, a0), F.vfrob(s, b0)
        for a in range(1, P.q):
            c = F.mul(a, F.frobenius(P.params.l, a))
            rows.append(P.index(P.vpack(F.vmul(a, sa), F.vmul(c, sb))))
            labels.append(f"sigma={s},a={a:#x},c={c:#x}")
    return rows, labels


def _semilinear_BCD(P: SuzukiGroup) -> tuple[list[np.ndarray], list[str]]:
    F = P.field
    q, m = P.q, P.m
    f = _correction_form(P)
    basis = np.array([1 << i for i in range(m)], dtype=np.int64)
    zero = np.zeros(m, dtype=np.int64)
    a0, b0, c0 = P.vunpack(P.keys)
    rows, labels = [], []
    # f on basis pairs of the source: value table for (e_i or f_i) x (e_j or f_j)
    er = np.concatenate([basis, zero])
    fr = np.concatenate([zero, basis])
    src = f(er[:, None], fr[:, None], er[None, :], fr[None, :])  # (2m, 2m)
    for s in range(m):
        ssrc = F.vfrob(s, src)
        sb = F.vfrob(s, basis)
        # first column (x, y) = M(1,0); images of e_i are s(x^i)*(x, y)
        x = np.repeat(np.arange(q), q)
        y = np.tile(np.arange(q), q)
        c = f(x, y, x, y)
        keep = c != 0
        x, y, c = x[keep], y[keep], c[keep]
        ex = F.vmul(sb[None, :], x[:, None])
        ey = F.vmul(sb[None, :], y[:, None])
        for i in range(m):
            for j in range(m):
                lhs = f(ex[:, i], ey[:, i], ex[:, j], ey[:, j])
                ok = lhs == F.vmul(c, ssrc[i, j])
                x, y, c, ex, ey = x[ok], y[ok], c[ok], ex[ok], ey[ok]
        if x.size == 0:
            continue
        # second column (u, w) = M(0,1), paired with every surviving first column
        u = np.repeat(np.arange(q), q)
        w = np.tile(np.arange(q), q)
        n1 = x.size
        idx1 = np.repeat(np.arange(n1), q * q)
        U = np.tile(u, n1)
        W = np.tile(w, n1)
        det = F.vmul(x[idx1], W) ^ F.vmul(U, y[idx1])
        live = det != 0
        idx1, U, W = idx1[live], U[live], W[live]
        fx = F.vmul(sb[None, :], U[:, None])
        fy = F.vmul(sb[None, :], W[:, None])
        cc = c[idx1]
        for i in range(m):
            for j in range(m):
                checks = (
                    (ex[idx1, i], ey[idx1, i], fx[:, j], fy[:, j], ssrc[i, m + j]),
                    (fx[:, i], fy[:, i], ex[idx1, j], ey[idx1, j], ssrc[m + i, j]),
                    (fx[:, i], fy[:, i], fx[:, j], fy[:, j], ssrc[m + i, m + j]),
                )
                ok = np.ones(idx1.size, dtype=bool)
                for p1, p2, p3, p4, val in checks:
                    ok &= f(p1, p2, p3, p4) == F.vmul(cc, val)
                idx1, U, W, fx, fy, cc = idx1[ok], U[ok], W[ok], fx[ok], fy[ok], cc[ok]
        sa, sbb, sc = F.vfrob(s, a0), F.vfrob(s, b0), F.vfrob(s, c0)
        for t in range(idx1.size):
            xa, ya = int(x[idx1[t]]), int(y[idx1[t]])
            ub, wb = int(U[t]), int(W[t])
            na = F.vmul(xa, sa) ^ F.vmul(ub, sbb)
            nb = F.vmul(ya, sa) ^ F.vmul(wb, sbb)
            rows.append(P.index(P.vpack(na, nb, F.vmul(int(cc[t]), sc))))
            labels.append(f"sigma={s},M=[{xa:#x},{ub:#x};{ya:#x},{wb:#x}],c={int(cc[t]):#x}")
    return rows, labels


def semilinear_aut_search(P: SuzukiGroup) -> AutSubgroup:
    """Every automorphism of the restricted semilinear shape; each is fully validated."""
    _require_family(P, "ABCD")
    rows, labels = _semilinear_A(P) if P.family == "A" else _semilinear_BCD(P)
    dtype = np.int32 if P.order < 2**31 else np.int64
    mat = np.array(rows, dtype=dtype) if rows else P.all[None, :].astype(dtype)
    for r, lab in zip(mat, labels):
        if not GroupMap(P, r).is_automorphism():
            raise InternalError(f"semilinear candidate {lab} passed the basis test but is not an automorphism")
    return AutSubgroup(P, mat, label="semilinear")


def brute_force_aut(P: OracleGroup) -> AutSubgroup:
    if P.order > ISO_LIMIT:
        raise ResourceError(f"brute-force Aut refused for |P| = {P.order} > {ISO_LIMIT}")
    maps = isomorphisms(P, P, find_all=True)
    return AutSubgroup(P, np.array(maps, dtype=np.int64), label="aut")


@dataclass
class SuzukiPropertyReport:
    group: str
    involutions: int
    transitive: bool
    conclusive: bool
    method: str
    orbit_sizes: list[int] = field(default_factory=list)
    maps_found: int = 0

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "involutions": self.involutions,
            "transitive": self.transitive,
            "conclusive": self.conclusive,
            "method": self.method,
            "orbit_sizes": self.orbit_sizes,
            "maps_found": self.maps_found,
        }


def involution_indices(G: OracleGroup) -> np.ndarray:
    x = G.all
    return np.flatnonzero((G.mul(x, x) == G.identity) & (x != G.identity))


def verify_suzuki_property(P: OracleGroup) -> SuzukiPropertyReport:
    """Is there an automorphism group permuting the involutions transitively?"""
    inv = involution_indices(P)
    name = P.name
    if P.is_abelian() or len(inv) < 2:
        why = "abelian" if P.is_abelian() else "at most one involution"
        return SuzukiPropertyReport(name, len(inv), False, True, f"excluded: {why}", [1] * len(inv))
    if isinstance(P, SuzukiGroup):
        aut = semilinear_aut_search(P)
        sizes = sorted(len(o) for o in aut.orbits(inv))
        if len(sizes) == 1:
            return SuzukiPropertyReport(name, len(inv), True, True, "semilinear", sizes, len(aut))
        if P.order > ISO_LIMIT:
            return SuzukiPropertyReport(name, len(inv), False, False, "semilinear (restricted)", sizes, len(aut))
    if P.order > ISO_LIMIT:
        return SuzukiPropertyReport(name, len(inv), False, False, "no search above order 64", [])
    aut = brute_force_aut(P)
    sizes = sorted(len(o) for o in aut.orbits(inv))
    return SuzukiPropertyReport(name, len(inv), len(sizes) == 1, True, "brute-force Aut", sizes, len(aut))


# -- induced actions -----------------------------------------------------------

def restriction(phi: GroupMap, N: Subgroup) -> GroupMap:
    """phi restricted to N, as a map of the standalone group N."""
    if not phi.maps_subgroup(N):
        raise UsageError("N is not invariant under the map")
    G = phi.group
    H = subgroup_as_group(N)
    img = H.index(G.keys[phi.images[N.indices]])
    return GroupMap(H, img, f"{phi.label}|N")


def induced_on_quotient(phi: GroupMap, N: Subgroup) -> GroupMap:
    """The coset map gN -> phi(g)N on G/N."""
    if not phi.maps_subgroup(N):
        raise UsageError("N is not invariant under the map")
    G = phi.group
    Q = quotient(G, N)
    ident = G.keys[G.identity]
    # Q.mul_keys(k, e) is the canonical coset key of the element with key k
    coset_of = Q.mul_keys(G.keys[phi.images[G.index(Q.keys)]], ident)
    return GroupMap(Q, Q.index(coset_of), f"{phi.label} mod N")


def induced_action(phi: GroupMap, N: Subgroup, mode: str = "restriction") -> GroupMap:
    if mode == "restriction":
        return restriction(phi, N)
    if mode == "quotient":
        return induced_on_quotient(phi, N)
    raise UsageError(f"unknown mode {mode!r}")


def map_orders(images: np.ndarray) -> np.ndarray:
    """Order of every row of an image matrix, by vectorised iteration."""
    images = np.asarray(images, dtype=np.int64)
    ident = np.arange(images.shape[1])
    orders = np.zeros(len(images), dtype=np.int64)
    cur = images.copy()
    k = 1
    live = np.ones(len(images), dtype=bool)
    while np.any(live):
        done = live & np.all(cur == ident[None, :], axis=1)
        orders[done] = k
        live &= ~done
        cur = np.take_along_axis(images, cur, axis=1)
        k += 1
    return orders


@dataclass
class FaithfulnessReport:
    odd_maps: int
    odd_faithful_on_center: bool
    odd_faithful_on_quotient: bool
    kernel_on_center: int
    kernel_on_quotient: int


def faithfulness(aut: AutSubgroup, Z: Subgroup | None = None) -> FaithfulnessReport:
    """Which maps act trivially on Z and on P/Z; odd-order ones must not (unless trivial)."""
    P = aut.group
    Z = center(P) if Z is None else Z
    imgs = aut.images
    zi = Z.indices
    on_z = np.all(imgs[:, zi] == zi[None, :], axis=1)
    # trivial on P/Z: phi(x) x^-1 in Z for all x
    diff = P.mul(imgs, P.inverses[None, :])
    on_q = np.all(Z.mask[diff], axis=1)
    orders = map_orders(imgs)
    odd = orders % 2 == 1
    nontrivial = orders > 1
    return FaithfulnessReport(
        odd_maps=int(odd.sum()),
        odd_faithful_on_center=not bool(np.any(odd & nontrivial & on_z)),
        odd_faithful_on_quotient=not bool(np.any(odd & nontrivial & on_q)),
        kernel_on_center=int(on_z.sum()),
        kernel_on_quotient=int(on_q.sum()),
    )


# -- semidirect products ---------------------------------------------------------

class SemidirectProduct(OracleGroup):
    """Pairs (u, e) with (u1,e1)(u2,e2) = (u1 e1(u2), e1 e2); key = u * |E| + e."""

    def __init__(self, P: OracleGroup, E_gens: list[GroupMap], name: str | None = None):
        for g in E_gens:
            if g.group is not P or not g.is_automorphism():
                raise UsageError(f"{g.label or 'map'} is not a verified automorphism of {P.name}")
        self.base = P
        E = closure_of_maps(P, E_gens)
        E = E[np.lexsort(E.T[::-1])]
        self.action = E
        ne = len(E)
        self.ne = ne
        index = {row.tobytes(): i for i, row in enumerate(E)}
        comp = np.empty((ne, ne), dtype=np.int64)
        for i in range(ne):
            for j in range(ne):
                comp[i, j] = index[E[i][E[j]].tobytes()]
        self.compose_table = comp
        self.e_identity = index[P.all.tobytes()]
        e_gens = [index[g.images.tobytes()] for g in E_gens]

        def mul_keys(a, b):
            u1, e1 = a // ne, a % ne
            u2, e2 = b // ne, b % ne
            u = P.mul(u1, E[e1, u2])
            return u * ne + comp[e1, e2]

        gens = [int(g) * ne + self.e_identity for g in P.gens]
        gens += [P.identity * ne + e for e in e_gens]
        labels = ", ".join(g.label for g in E_gens)
        super().__init__(
            np.arange(P.order * ne, dtype=np.int64),
            mul_keys,
            P.identity * ne + self.e_identity,
            gens,
            name=name or f"sdp({P.name}; {labels})",
            formatter=lambda k: f"({P.format(k // ne)},e{k % ne})",
        )

    @property
    def complement_order(self) -> int:
        return self.ne

    def base_subgroup(self) -> Subgroup:
        """{(u, id)}."""
        return Subgroup.from_indices(self, self.base.all * self.ne + self.e_identity)


def semidirect_product(P: OracleGroup, E_gens: list[GroupMap], name: str | None = None) -> SemidirectProduct:
    return SemidirectProduct(P, E_gens, name)
