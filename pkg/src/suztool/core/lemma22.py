"""Normal-subgroup structure checks for Suzuki 2-groups.

Each clause is an implication; it is *applicable* when its hypothesis holds
for the given (P, Q) and then *holds* when the conclusion does.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import UsageError
from .oracle import Subgroup, generating_set
from .structure import center


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    applicable: bool
    holds: bool
    detail: str

    @property
    def ok(self) -> bool:
        return (not self.applicable) or self.holds


@dataclass
class NormalSubgroupClauses:
    group: str
    q_order: int
    image_order: int
    clauses: list[ClauseResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)


def subgroup_center(Q: Subgroup) -> Subgroup:
    G = Q.parent
    mask = Q.mask.copy()
    idx = Q.indices
    for h in generating_set(Q):
        keep = G.mul(idx, h) == G.mul(h, idx)
        mask[idx[~keep]] = False
    return Subgroup(G, mask)


def verify_lemma22(P, Q: Subgroup, Z: Subgroup | None = None) -> NormalSubgroupClauses:
    """Evaluate every clause that applies to the family of P."""
    if Q.parent is not P:
        raise UsageError("Q is not a subgroup of P")
    if not Q.is_normal():
        raise UsageError("Q is not normal in P")
    Z = center(P) if Z is None else Z
    zq = (Z & Q).order
    img = Q.order // zq
    z_in_q = Z <= Q
    rep = NormalSubgroupClauses(P.name, Q.order, img)

    def zq_center() -> bool:
        return subgroup_center(Q) == Z

    if P.family == "A":
        k = P.params.theta_order
        n = P.m // k
        odd = k % 2 == 1
        bound = 2 ** (n * (k - 1))
        rep.clauses.append(ClauseResult(
            "a.i", odd and img >= 2, zq >= bound, f"|Z∩Q|={zq}, bound={bound}"))
        if odd and img >= 4:
            zc = zq_center()
            rep.clauses.append(ClauseResult("a.ii", True, z_in_q and zc, f"Z<=Q: {z_in_q}, Z(Q)=Z: {zc}"))
        else:
            rep.clauses.append(ClauseResult("a.ii", False, True, "hypothesis fails"))
        rep.clauses.append(ClauseResult(
            "a.iii", odd and img <= 2, Q.is_abelian(), f"|QZ/Z|={img}"))
        rep.clauses.append(ClauseResult(
            "a.iv", odd and Z.order == 8 and img == 2, z_in_q, f"Z<=Q: {z_in_q}"))
    else:
        if img >= 2:
            zc = zq_center()
            rep.clauses.append(ClauseResult("b", True, z_in_q and zc, f"Z<=Q: {z_in_q}, Z(Q)=Z: {zc}"))
        else:
            rep.clauses.append(ClauseResult("b", False, True, "Q <= Z"))
    return rep


def o_alpha_product_is_center(P, a1: int, a2: int) -> bool:
    """O_a1 * O_a2 equals Z(P) (both lie in the elementary abelian centre)."""
    s1 = np.array(sorted(P.tau_alpha_image(a1)), dtype=np.int64)
    s2 = np.array(sorted(P.tau_alpha_image(a2)), dtype=np.int64)
    return len(np.unique(s1[:, None] ^ s2[None, :])) == P.q
