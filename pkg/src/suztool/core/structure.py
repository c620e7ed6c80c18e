"""Characteristic subgroups, quotients and isomorphism-invariant fingerprints."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import UsageError
from .classes import conjugacy_classes
from .oracle import OracleGroup, Subgroup, closure, generating_set, whole_group


def is_power_of(n: int, p: int) -> bool:
    while n > 1 and n % p == 0:
        n //= p
    return n == 1


def center(G: OracleGroup) -> Subgroup:
    """Elements commuting with every generator; cross-checked on the full universe."""
    mask = np.ones(G.order, dtype=bool)
    x = G.all
    for g in G.gens:
        mask &= G.mul(x, g) == G.mul(g, x)
    return Subgroup(G, mask)


def centralizer(H: Subgroup) -> Subgroup:
    G = H.parent
    mask = np.ones(G.order, dtype=bool)
    for h in generating_set(H):
        mask &= G.mul(G.all, h) == G.mul(h, G.all)
    return Subgroup(G, mask)


def normal_closure_in(H: Subgroup, elements) -> Subgroup:
    """Least subgroup of H containing ``elements`` and normalised by H."""
    G = H.parent
    hg = generating_set(H)
    T = np.unique(np.asarray(elements, dtype=np.int64).ravel())
    N = closure(G, T)
    if hg.size == 0:
        return N
    while True:
        conj = np.unique(G.conj(N.indices[:, None], hg[None, :]).ravel())
        missing = conj[~N.mask[conj]]
        if missing.size == 0:
            return N
        N = closure(G, missing, start=N)


def derived_of(H: Subgroup) -> Subgroup:
    """[H,H] as the normal closure in H of commutators of a generating set."""
    G = H.parent
    gens = generating_set(H)
    if gens.size < 2:
        return Subgroup.from_indices(G, [G.identity])
    comms = G.commutator(gens[:, None], gens[None, :]).ravel()
    return normal_closure_in(H, comms)


def derived_subgroup(G: OracleGroup) -> Subgroup:
    return derived_of(whole_group(G))


def derived_by_all_commutators(G: OracleGroup) -> Subgroup:
    """Closure of every commutator [x,y]; quadratic, for cross-checking."""
    x = G.all
    comms = np.unique(G.commutator(x[:, None], x[None, :]).ravel())
    return closure(G, comms)


def derived_series(G: OracleGroup) -> list[int]:
    """Orders |G| = |G^(0)| > |G^(1)| > ... down to the point of stabilisation."""
    H = whole_group(G)
    orders = [H.order]
    while True:
        D = derived_of(H)
        if D.order == H.order:
            break
        orders.append(D.order)
        H = D
        if D.order == 1:
            break
    return orders


def frattini_2group(G: OracleGroup) -> Subgroup:
    """Phi(P) = P^2[P,P]; for 2-groups the squares alone generate it."""
    if not is_power_of(G.order, 2):
        raise UsageError(f"{G.name} has order {G.order}, not a power of 2")
    squares = np.unique(G.mul(G.all, G.all))
    return closure(G, squares)


def omega1(G: OracleGroup) -> Subgroup:
    x = G.all
    return closure(G, x[G.mul(x, x) == G.identity])


def exponent(G: OracleGroup) -> int:
    return G.exponent


def quotient(G: OracleGroup, N: Subgroup, name: str | None = None) -> OracleGroup:
    """G/N with each coset keyed by the key of its least member."""
    if N.parent is not G:
        raise UsageError("normal subgroup belongs to a different group")
    if not N.is_normal():
        raise UsageError("quotient by a subgroup that is not normal")
    n = G.order
    ngens = generating_set(N)
    if ngens.size:
        src = np.repeat(G.all, ngens.size)
        dst = G.mul(G.all[:, None], ngens[None, :]).ravel()
        graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(n)
    least = np.full(labels.max() + 1, n, dtype=np.int64)
    np.minimum.at(least, labels, G.all)
    rep = least[labels]
    rep_key = G.keys[rep]
    gkeys = G.keys

    def mul_keys(a, b):
        prod = G.mul(G.index(a), G.index(b))
        return rep_key[prod]

    coset_keys = np.unique(rep_key)
    gens = np.unique(rep_key[G.gens]) if G.gens.size else np.array([gkeys[G.identity]])
    return OracleGroup(
        coset_keys,
        mul_keys,
        int(rep_key[G.identity]),
        gens,
        name=name or f"{G.name}/N",
        formatter=G._formatter,
    )


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    class_sizes: tuple[tuple[int, int], ...]
    element_orders: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    exponent: int
    derived_series: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "class_sizes": [list(p) for p in self.class_sizes],
            "element_orders": [list(p) for p in self.element_orders],
            "center_order": self.center_order,
            "derived_order": self.derived_order,
            "exponent": self.exponent,
            "derived_series": list(self.derived_series),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _multiset(values) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(k), int(v)) for k, v in Counter(int(x) for x in values).items()))


def fingerprint(G: OracleGroup) -> GroupFingerprint:
    data = conjugacy_classes(G)
    series = derived_series(G)
    return GroupFingerprint(
        order=G.order,
        class_sizes=_multiset(data.sizes),
        element_orders=_multiset(G.element_orders),
        center_order=center(G).order,
        derived_order=series[1] if len(series) > 1 else G.order,
        exponent=G.exponent,
        derived_series=tuple(series),
    )
