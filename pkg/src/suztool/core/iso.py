"""Brute-force isomorphism search for small groups, plus a few standard constructions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ResourceError
from .classes import conjugacy_classes
from .oracle import OracleGroup, closure, trivial_subgroup
from .structure import frattini_2group, is_power_of

ISO_LIMIT = 64
_BATCH = 1 << 15


@dataclass(frozen=True)
class SpanningTree:
    """BFS tree of <gens>: elements[t] = elements[parent[t]] * gens[label[t]]."""

    elements: np.ndarray
    parent: np.ndarray
    label: np.ndarray
    position: np.ndarray  # element index -> position in ``elements`` (-1 outside)


def spanning_tree(G: OracleGroup, gens: np.ndarray) -> SpanningTree:
    pos = np.full(G.order, -1, dtype=np.int64)
    elements, parent, label = [G.identity], [-1], [-1]
    pos[G.identity] = 0
    head = 0
    while head < len(elements):
        x = elements[head]
        for j, g in enumerate(gens):
            y = int(G.mul(x, g))
            if pos[y] < 0:
                pos[y] = len(elements)
                elements.append(y)
                parent.append(head)
                label.append(j)
        head += 1
    return SpanningTree(
        np.array(elements, dtype=np.int64),
        np.array(parent, dtype=np.int64),
        np.array(label, dtype=np.int64),
        pos,
    )


def search_generators(G: OracleGroup) -> np.ndarray:
    """Short generating tuple: high-order elements, lifted from G/Phi(G) for 2-groups."""
    phi = frattini_2group(G) if G.order > 1 and is_power_of(G.order, 2) else trivial_subgroup(G)
    orders = G.element_orders
    sizes = conjugacy_classes(G).sizes[conjugacy_classes(G).class_of]
    gens: list[int] = []
    cur = closure(G, [], start=None)
    span = closure(G, phi.indices)
    while cur.order < G.order:
        rest = np.flatnonzero(~span.mask)
        if rest.size == 0:
            rest = np.flatnonzero(~cur.mask)
        # large order first, then small class (fewer candidate images), then index
        key = np.lexsort((rest, sizes[rest], -orders[rest]))
        pick = int(rest[key[0]])
        gens.append(pick)
        cur = closure(G, gens)
        span = closure(G, np.concatenate([gens, phi.indices]).astype(np.int64))
    return np.array(gens, dtype=np.int64)


def _extend_assignments(G, H, tree, gens, partial, candidates, TH):
    """Keep the extensions of ``partial`` by ``candidates`` that define homomorphisms on <gens>."""
    k = len(gens)
    out = []
    prods = G.mul(tree.elements[:, None], gens[None, :])
    ppos = tree.position[prods]  # every product stays inside <gens>
    cand = np.asarray(candidates, dtype=np.int64)
    for s in range(0, len(partial), max(1, _BATCH // max(1, len(cand)))):
        block = partial[s:s + max(1, _BATCH // max(1, len(cand)))]
        imgs = np.concatenate(
            [np.repeat(block, len(cand), axis=0), np.tile(cand, len(block))[:, None]], axis=1
        )
        phi = np.empty((len(imgs), len(tree.elements)), dtype=np.int64)
        phi[:, 0] = H.identity
        for t in range(1, len(tree.elements)):
            phi[:, t] = TH[phi[:, tree.parent[t]], imgs[:, tree.label[t]]]
        ok = np.ones(len(imgs), dtype=bool)
        for j in range(k):
            lhs = phi[:, ppos[:, j]]
            rhs = TH[phi, imgs[:, j][:, None]]
            ok &= np.all(lhs == rhs, axis=1)
        if np.any(ok):
            srt = np.sort(phi[ok], axis=1)
            inj = np.all(srt[:, 1:] != srt[:, :-1], axis=1)
            good = np.flatnonzero(ok)[inj]
            out.append((imgs[good], phi[good]))
    if not out:
        return np.zeros((0, k), dtype=np.int64), np.zeros((0, len(tree.elements)), dtype=np.int64)
    return np.concatenate([o[0] for o in out]), np.concatenate([o[1] for o in out])


def isomorphisms(G: OracleGroup, H: OracleGroup, find_all: bool = False) -> list[np.ndarray]:
    """Isomorphisms G -> H as index arrays phi[x]; the first one found, or all of them."""
    if G.order > ISO_LIMIT or H.order > ISO_LIMIT:
        raise ResourceError(f"brute-force isomorphism refused above order {ISO_LIMIT}")
    if G.order != H.order:
        return []
    if G.order == 1:
        return [np.array([H.identity], dtype=np.int64)]
    cg, ch = conjugacy_classes(G), conjugacy_classes(H)
    sig_g = np.stack([G.element_orders, cg.sizes[cg.class_of]], axis=1)
    sig_h = np.stack([H.element_orders, ch.sizes[ch.class_of]], axis=1)
    if sorted(map(tuple, sig_g.tolist())) != sorted(map(tuple, sig_h.tolist())):
        return []
    TH = H.cayley_table()
    gens = search_generators(G)
    partial = np.zeros((1, 0), dtype=np.int64)
    phi = None
    for i in range(len(gens)):
        want = sig_g[gens[i]]
        cands = np.flatnonzero(np.all(sig_h == want, axis=1))
        tree = spanning_tree(G, gens[: i + 1])
        partial, phi = _extend_assignments(G, H, tree, gens[: i + 1], partial, cands, TH)
        if len(partial) == 0:
            return []
    # the final tree spans G; reorder from tree positions to element indices
    full = np.empty((len(phi), G.order), dtype=np.int64)
    full[:, tree.elements] = phi
    full = full[np.lexsort(full.T[::-1])]
    rows = [r for r in full]
    return rows if find_all else rows[:1]


def brute_force_isomorphic(G: OracleGroup, H: OracleGroup) -> np.ndarray | None:
    """An isomorphism G -> H, or None when none exists."""
    found = isomorphisms(G, H)
    return found[0] if found else None


def is_isomorphism(G: OracleGroup, H: OracleGroup, phi: np.ndarray) -> bool:
    phi = np.asarray(phi, dtype=np.int64)
    if G.order != H.order or len(np.unique(phi)) != G.order:
        return False
    x = G.all
    return bool(np.array_equal(phi[G.mul(x[:, None], x[None, :])], H.mul(phi[:, None], phi[None, :])))


# -- small standard groups ----------------------------------------------------

def abelian_group(orders: list[int], name: str | None = None) -> OracleGroup:
    """C_{n1} x ... x C_{nk} with mixed-radix keys."""
    orders = [int(n) for n in orders]
    radix = np.cumprod([1] + orders[:-1]).astype(np.int64)
    total = int(np.prod(orders)) if orders else 1
    mods = np.array(orders, dtype=np.int64)

    def mul_keys(a, b):
        da = (a[..., None] // radix) % mods
        db = (b[..., None] // radix) % mods
        return (((da + db) % mods) * radix).sum(axis=-1)

    return OracleGroup(
        np.arange(total), mul_keys, 0, [int(r) for r, n in zip(radix, orders) if n > 1], name=name or "x".join(f"C{n}" for n in orders)
    )


def cyclic_group(n: int) -> OracleGroup:
    return abelian_group([n], name=f"C{n}")


def direct_product(G: OracleGroup, H: OracleGroup) -> OracleGroup:
    nh = H.order

    def mul_keys(a, b):
        gi = G.mul(a // nh, b // nh)
        hi = H.mul(a % nh, b % nh)
        return gi * nh + hi

    gens = [int(g) * nh + H.identity for g in G.gens] + [G.identity * nh + int(h) for h in H.gens]
    return OracleGroup(np.arange(G.order * nh), mul_keys, G.identity * nh + H.identity, gens,
                       name=f"{G.name}x{H.name}")


def relabel(G: OracleGroup, perm: np.ndarray, name: str | None = None) -> OracleGroup:
    """Copy of G whose element i gets key perm[i]; perm must be a permutation of 0..n-1."""
    perm = np.asarray(perm, dtype=np.int64)
    back = np.empty_like(perm)
    back[perm] = np.arange(len(perm))

    def mul_keys(a, b):
        return perm[G.mul(back[a], back[b])]

    return OracleGroup(np.arange(G.order), mul_keys, int(perm[G.identity]), perm[G.gens],
                       name=name or f"relabel({G.name})")
