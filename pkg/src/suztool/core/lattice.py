"""Normal-subgroup lattice by join-closure of the normal closures of single classes.

A normal subgroup is a union of classes, so it is stored as a boolean vector
over class indices. The product of two normal subgroups is again a union of
classes; which classes appear is read off a class-level product support
tensor, so joins reduce to boolean matrix products.
"""

from __future__ import annotations

import numpy as np

from ..errors import ResourceError
from .classes import ConjugacyData, conjugacy_classes
from .oracle import CAYLEY_LIMIT, OracleGroup, Subgroup, closure

NORMAL_LIMIT = 1 << 12
SUBGROUP_LIMIT = 128


def product_support(G: OracleGroup, data: ConjugacyData) -> np.ndarray:
    """S[i, j, k] is True iff some x in C_i, y in C_j have xy in C_k."""
    r = data.count
    S = np.zeros((r, r, r), dtype=bool)
    ycls = data.class_of
    for i, rep in enumerate(data.reps):
        S[i, ycls, data.class_of[G.mul(rep, G.all)]] = True
    return S


def class_mask_to_subgroup(G: OracleGroup, data: ConjugacyData, cmask: np.ndarray) -> Subgroup:
    return Subgroup(G, cmask[data.class_of])


def normal_subgroups(G: OracleGroup, threads: int = 1) -> list[Subgroup]:
    """Every normal subgroup of G, ordered by (order, sorted member indices)."""
    if G.order > NORMAL_LIMIT:
        raise ResourceError(f"normal-subgroup enumeration refused for |G| = {G.order} > {NORMAL_LIMIT}")
    data = conjugacy_classes(G, threads)
    r = data.count
    S = product_support(G, data)

    # atoms: normal closures of single classes (a class generates a normal subgroup)
    atoms: dict[bytes, np.ndarray] = {}
    for j in range(r):
        H = closure(G, data.members(j))
        cm = np.zeros(r, dtype=bool)
        cm[data.class_of[H.indices]] = True
        atoms.setdefault(np.packbits(cm).tobytes(), cm)
    atom_list = [atoms[k] for k in sorted(atoms)]
    # R[a][i, k]: class k appears in C_i * A_a
    joins = [S[:, a, :].any(axis=1).astype(np.float32) for a in atom_list]

    trivial = np.zeros(r, dtype=bool)
    trivial[data.class_of[G.identity]] = True
    seen = {np.packbits(trivial).tobytes(): trivial}
    frontier = [trivial]
    while frontier:
        F = np.array(frontier)
        Ff = F.astype(np.float32)
        nxt = []
        for a, R in zip(atom_list, joins):
            todo = ~np.all(F[:, a], axis=1)
            if not np.any(todo):
                continue
            J = (Ff[todo] @ R) > 0
            for row in J:
                key = np.packbits(row).tobytes()
                if key not in seen:
                    seen[key] = row
                    nxt.append(row)
        frontier = nxt

    subs = [class_mask_to_subgroup(G, data, cm) for cm in seen.values()]
    subs.sort(key=lambda H: (H.order, tuple(H.indices.tolist())))
    return subs


def _table_closure(T: np.ndarray, mask: np.ndarray) -> np.ndarray:
    mask = mask.copy()
    while True:
        idx = np.flatnonzero(mask)
        new = np.zeros_like(mask)
        new[T[np.ix_(idx, idx)].ravel()] = True
        if not np.any(new & ~mask):
            return mask
        mask |= new


def all_subgroups(G: OracleGroup) -> list[Subgroup]:
    """Every subgroup, as the join-closure of cyclic subgroups (reference method)."""
    if G.order > SUBGROUP_LIMIT or G.order > CAYLEY_LIMIT:
        raise ResourceError(f"subgroup enumeration refused for |G| = {G.order} > {SUBGROUP_LIMIT}")
    T = G.cayley_table()
    cyclic: dict[bytes, np.ndarray] = {}
    for x in G.all:
        m = np.zeros(G.order, dtype=bool)
        m[G.identity] = True
        m[x] = True
        m = _table_closure(T, m)
        cyclic.setdefault(np.packbits(m).tobytes(), m)
    cyc = list(cyclic.values())
    trivial = np.zeros(G.order, dtype=bool)
    trivial[G.identity] = True
    seen = {np.packbits(trivial).tobytes(): trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyc:
                if not np.any(C & ~H):
                    continue
                J = _table_closure(T, H | C)
                key = np.packbits(J).tobytes()
                if key not in seen:
                    seen[key] = J
                    nxt.append(J)
        frontier = nxt
    subs = [Subgroup(G, m) for m in seen.values()]
    subs.sort(key=lambda H: (H.order, tuple(H.indices.tolist())))
    return subs
