"""Finite groups given by a vectorised multiplication oracle over a materialised universe.

Every element is identified by an integer *key*; the universe is the sorted
array of keys and an element's *index* is its position in that array, so all
outputs that are ordered by index are ordered by key and hence deterministic.
"""

from __future__ import annotations

from functools import cached_property
from math import lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import ConstructionError, ResourceError, UsageError

MulKeys = Callable[[np.ndarray, np.ndarray], np.ndarray]

CAYLEY_LIMIT = 4096


class OracleGroup:
    """A finite group: sorted key universe plus a vectorised key multiplication.

    ``mul_keys(a, b)`` must accept two broadcast-compatible int64 arrays and
    return the array of product keys.
    """

    def __init__(
        self,
        keys: Iterable[int] | np.ndarray,
        mul_keys: MulKeys,
        identity_key: int,
        generator_keys: Sequence[int] | np.ndarray,
        name: str = "G",
        formatter: Callable[[int], str] | None = None,
    ):
        keys = np.unique(np.asarray(keys, dtype=np.int64))
        keys.setflags(write=False)
        self.keys = keys
        self._mul_keys = mul_keys
        self.name = name
        self._formatter = formatter
        self._contiguous = bool(len(keys) and keys[0] == 0 and keys[-1] == len(keys) - 1)
        self.identity = int(self.index(np.int64(identity_key)))
        gens = np.asarray(self.index(np.asarray(generator_keys, dtype=np.int64)), dtype=np.int64)
        gens.setflags(write=False)
        self.gens = gens

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.order}>"

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def order(self) -> int:
        return len(self.keys)

    # -- key/index translation --------------------------------------------
    def index(self, keys):
        """Indices of the given keys; raises if any key is outside the universe."""
        keys = np.asarray(keys, dtype=np.int64)
        if self._contiguous:
            if keys.size and (keys.min() < 0 or keys.max() >= len(self.keys)):
                raise ConstructionError(f"{self.name}: product left the element universe")
            return keys
        pos = np.searchsorted(self.keys, keys)
        pos = np.minimum(pos, len(self.keys) - 1)
        if keys.size and not np.array_equal(self.keys[pos], keys):
            raise ConstructionError(f"{self.name}: product left the element universe")
        return pos

    def key(self, i):
        return self.keys[np.asarray(i, dtype=np.int64)]

    def format(self, i: int) -> str:
        k = int(self.keys[int(i)])
        return self._formatter(k) if self._formatter else str(k)

    def mul_keys(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return self._mul_keys(a, b)

    # -- arithmetic on indices --------------------------------------------
    def mul(self, i, j):
        return self.index(self.mul_keys(self.keys[np.asarray(i)], self.keys[np.asarray(j)]))

    def inv(self, i):
        return self.inverses[np.asarray(i)]

    def conj(self, x, g):
        """g^-1 x g."""
        return self.mul(self.mul(self.inv(g), x), g)

    def commutator(self, x, y):
        """[x, y] = x^-1 y^-1 x y."""
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def power(self, x, e):
        """Elementwise x^e with e a scalar or an array of non-negative exponents."""
        x = np.asarray(x, dtype=np.int64)
        e = np.broadcast_to(np.asarray(e, dtype=np.int64), x.shape).copy()
        result = np.full(x.shape, self.identity, dtype=np.int64)
        base = x.copy()
        while np.any(e):
            odd = (e & 1).astype(bool)
            if np.any(odd):
                result[odd] = self.mul(result[odd], base[odd])
            e >>= 1
            live = e > 0
            if np.any(live):
                base[live] = self.mul(base[live], base[live])
        return result

    @cached_property
    def all(self) -> np.ndarray:
        a = np.arange(self.order, dtype=np.int64)
        a.setflags(write=False)
        return a

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        cur = self.all.copy()
        live = np.ones(self.order, dtype=bool)
        k = 1
        while np.any(live):
            hit = live & (cur == self.identity)
            orders[hit] = k
            live &= ~hit
            if not np.any(live):
                break
            idx = np.flatnonzero(live)
            cur[idx] = self.mul(cur[idx], idx)
            k += 1
            if k > self.order:
                raise ConstructionError(f"{self.name}: element of order > |G|; oracle is not a group")
        orders.setflags(write=False)
        return orders

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = self.power(self.all, self.element_orders - 1)
        inv.setflags(write=False)
        return inv

    @cached_property
    def exponent(self) -> int:
        return lcm(*(int(o) for o in np.unique(self.element_orders)))

    def cayley_table(self) -> np.ndarray:
        return self._cayley

    @cached_property
    def _cayley(self) -> np.ndarray:
        if self.order > CAYLEY_LIMIT:
            raise ResourceError(f"Cayley table refused for |G| = {self.order} > {CAYLEY_LIMIT}")
        t = self.mul(self.all[:, None], self.all[None, :])
        t.setflags(write=False)
        return t

    # -- validation ---------------------------------------------------------
    def check_generation(self) -> None:
        if closure(self, self.gens).order != self.order:
            raise ConstructionError(f"{self.name}: generators do not generate the universe")

    def is_abelian(self) -> bool:
        g = self.gens
        return bool(np.array_equal(self.mul(g[:, None], g[None, :]), self.mul(g[None, :], g[:, None])))


class Subgroup:
    """A subgroup stored as a boolean membership mask over the parent's indices."""

    def __init__(self, parent: OracleGroup, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (parent.order,):
            raise ValueError("mask length does not match the parent group")
        mask = mask.copy()
        mask.setflags(write=False)
        self.parent = parent
        self.mask = mask
        self._order = int(mask.sum())
        self._hash = hash(np.packbits(mask).tobytes())

    @classmethod
    def from_indices(cls, parent: OracleGroup, indices) -> "Subgroup":
        mask = np.zeros(parent.order, dtype=bool)
        mask[np.asarray(indices, dtype=np.int64)] = True
        return cls(parent, mask)

    @property
    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    @cached_property
    def indices(self) -> np.ndarray:
        idx = np.flatnonzero(self.mask)
        idx.setflags(write=False)
        return idx

    def __contains__(self, i) -> bool:
        return bool(self.mask[int(i)])

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and bool(np.array_equal(other.mask, self.mask))
        )

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: "Subgroup") -> bool:
        return not np.any(self.mask & ~other.mask)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.mask & other.mask)

    def __repr__(self) -> str:
        return f"<Subgroup of order {self.order} in {self.parent.name}>"

    def is_normal(self) -> bool:
        G = self.parent
        idx = self.indices
        for g in G.gens:
            if not np.all(self.mask[G.conj(idx, g)]):
                return False
        return True

    def is_abelian(self) -> bool:
        gens = generating_set(self)
        G = self.parent
        return bool(np.array_equal(G.mul(gens[:, None], gens[None, :]), G.mul(gens[None, :], gens[:, None])))

    def serialize(self) -> list[str]:
        return [self.parent.format(i) for i in self.indices]


def closure(G: OracleGroup, generators, start: Subgroup | None = None) -> Subgroup:
    """Least subgroup containing ``generators`` (and ``start``), adding one generator at a time.

    Generators already inside the running subgroup are skipped, so at most
    log2|G| of them ever take part in the saturation.
    """
    gens = np.unique(np.asarray(generators, dtype=np.int64).ravel())
    mask = np.zeros(G.order, dtype=bool) if start is None else start.mask.copy()
    mask[G.identity] = True
    active = [] if start is None else [int(g) for g in generating_set(start)]
    for g in gens:
        if mask[g]:
            continue
        active.append(int(g))
        act = np.array(active, dtype=np.int64)
        frontier = _extend(G, mask, np.flatnonzero(mask), np.array([g], dtype=np.int64))
        while frontier.size:
            frontier = _extend(G, mask, frontier, act)
    return Subgroup(G, mask)


def _extend(G: OracleGroup, mask: np.ndarray, frontier: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """Mark frontier*gens in ``mask``; return the newly reached indices."""
    step = max(1, _CHUNK // max(1, gens.size))
    found = []
    for s in range(0, frontier.size, step):
        prods = np.unique(G.mul(frontier[s:s + step, None], gens[None, :]).ravel())
        new = prods[~mask[prods]]
        mask[new] = True
        found.append(new)
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


_CHUNK = 1 << 20


def normal_closure(G: OracleGroup, elements) -> Subgroup:
    """Least normal subgroup containing ``elements``."""
    T = np.unique(np.asarray(elements, dtype=np.int64).ravel())
    N = closure(G, T)
    while True:
        conj = np.unique(G.conj(T[:, None], G.gens[None, :]).ravel())
        missing = conj[~N.mask[conj]]
        if missing.size == 0:
            return N
        T = np.unique(np.concatenate([T, missing]))
        N = closure(G, T)


def generating_set(H: Subgroup) -> np.ndarray:
    """A small generating set for H, chosen greedily in index order."""
    cached = H.__dict__.get("_gens")
    if cached is not None:
        return cached
    G = H.parent
    gens: list[int] = []
    cur = trivial_subgroup(G)
    cur.__dict__["_gens"] = np.zeros(0, dtype=np.int64)
    while True:
        rest = np.flatnonzero(H.mask & ~cur.mask)
        if rest.size == 0:
            break
        # prefer an element of maximal order among the remaining ones
        pick = int(rest[np.argmax(G.element_orders[rest])])
        gens.append(pick)
        cur = closure(G, [pick], start=cur)
        cur.__dict__["_gens"] = np.array(gens, dtype=np.int64)
    out = np.array(gens, dtype=np.int64)
    out.setflags(write=False)
    H.__dict__["_gens"] = out
    return out


def trivial_subgroup(G: OracleGroup) -> Subgroup:
    return Subgroup.from_indices(G, [G.identity])


def whole_group(G: OracleGroup) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool))


def subgroup_as_group(H: Subgroup, name: str | None = None) -> OracleGroup:
    """H as a standalone OracleGroup with the parent's keys and multiplication."""
    G = H.parent
    sub = OracleGroup(
        G.keys[H.indices],
        G._mul_keys,
        int(G.keys[G.identity]),
        G.keys[generating_set(H)] if H.order > 1 else [int(G.keys[G.identity])],
        name=name or f"sub({G.name})",
        formatter=G._formatter,
    )
    return sub


def check_in_group(G: OracleGroup, H: Subgroup) -> None:
    if H.parent is not G:
        raise UsageError("subgroup belongs to a different group")
