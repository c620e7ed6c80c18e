"""Conjugacy classes by orbit saturation under conjugation by generators."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import ResourceError
from .oracle import OracleGroup

PAIRWISE_LIMIT = 512


@dataclass(frozen=True, eq=False)
class ConjugacyData:
    """Classes ordered by representative index; the representative is the least member."""

    reps: np.ndarray
    sizes: np.ndarray
    class_of: np.ndarray

    def __len__(self) -> int:
        return len(self.reps)

    @property
    def count(self) -> int:
        return len(self.reps)

    def members(self, i: int) -> np.ndarray:
        return self.sorted_members[self.offsets[i]:self.offsets[i + 1]]

    @cached_property
    def sorted_members(self) -> np.ndarray:
        return np.argsort(self.class_of, kind="stable")

    @cached_property
    def offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum(self.sizes)])

    def same_as(self, other: "ConjugacyData") -> bool:
        return (
            np.array_equal(self.reps, other.reps)
            and np.array_equal(self.sizes, other.sizes)
            and np.array_equal(self.class_of, other.class_of)
        )


def _canonical(labels: np.ndarray) -> ConjugacyData:
    """Renumber component labels so that classes are ordered by least member."""
    n = len(labels)
    ncomp = int(labels.max()) + 1 if n else 0
    first = np.full(ncomp, n, dtype=np.int64)
    np.minimum.at(first, labels, np.arange(n, dtype=np.int64))
    order = np.argsort(first, kind="stable")
    rank = np.empty(ncomp, dtype=np.int64)
    rank[order] = np.arange(ncomp)
    class_of = rank[labels]
    reps = first[order]
    sizes = np.bincount(class_of, minlength=ncomp).astype(np.int64)
    for a in (reps, sizes, class_of):
        a.setflags(write=False)
    return ConjugacyData(reps, sizes, class_of)


def conjugation_perms(G: OracleGroup, threads: int = 1) -> np.ndarray:
    """Row i is the permutation x -> g_i^-1 x g_i."""
    gens = list(G.gens)
    if not gens:
        return np.zeros((0, G.order), dtype=np.int64)

    def one(g):
        return G.conj(G.all, g)

    if threads > 1 and len(gens) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, gens))
    else:
        rows = [one(g) for g in gens]
    return np.stack(rows)


def conjugacy_classes(G: OracleGroup, threads: int = 1) -> ConjugacyData:
    """Orbits of the conjugation action; the result does not depend on ``threads``."""
    cached = G.__dict__.get("_classes")
    if cached is not None:
        return cached
    n = G.order
    perms = conjugation_perms(G, threads)
    src = np.tile(np.arange(n, dtype=np.int64), len(perms))
    dst = perms.ravel()
    graph = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    data = _canonical(labels.astype(np.int64))
    G.__dict__["_classes"] = data
    return data


def conjugacy_classes_pairwise(G: OracleGroup) -> ConjugacyData:
    """O(n^2) reference: x and y are conjugate iff y = g^-1 x g for some g in G."""
    if G.order > PAIRWISE_LIMIT:
        raise ResourceError(f"pairwise conjugacy refused for |G| = {G.order} > {PAIRWISE_LIMIT}")
    T = G.cayley_table()
    inv = G.inverses
    # conj[x, g] = g^-1 x g
    conj = T[T[inv[None, :], G.all[:, None]], G.all[None, :]]
    labels = conj.min(axis=1)
    _, labels = np.unique(labels, return_inverse=True)
    return _canonical(labels.astype(np.int64))


def inverse_classes(G: OracleGroup, data: ConjugacyData) -> np.ndarray:
    """Index of the class containing the inverses of class i."""
    return data.class_of[G.inverses[data.reps]]
