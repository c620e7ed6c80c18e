"""Character heights relative to a Sylow 2-subgroup, and the predicted height sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import UsageError
from ..suzuki import SuzukiParams
from .dixon import DegreeTable


def v2(n: int) -> int:
    if n <= 0:
        raise UsageError("2-adic valuation of a non-positive integer")
    return (n & -n).bit_length() - 1


@dataclass(frozen=True)
class HeightProfile:
    counts: dict[int, int]
    defect: int

    @property
    def heights(self) -> set[int]:
        return {h for h, k in self.counts.items() if k > 0}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> dict[str, int]:
        return {str(h): self.counts[h] for h in sorted(self.counts)}


def height_profile(table: DegreeTable, sylow_order: int | None = None) -> HeightProfile:
    """h(chi) = v2(chi(1)) - v2([G:P]); P defaults to a Sylow 2-subgroup."""
    n = table.order
    d = v2(n)
    if sylow_order is not None and sylow_order != 1 << d:
        raise UsageError(f"{sylow_order} is not the 2-part of |G| = {n}")
    index_v2 = 0  # [G:P] is odd
    counts: dict[int, int] = {}
    for deg in table.degrees:
        h = v2(deg) - index_v2
        counts[h] = counts.get(h, 0) + 1
    return HeightProfile(dict(sorted(counts.items())), d)


def predicted_heights(params: SuzukiParams) -> set[int] | None:
    """Heights with k_h != 0 for a block whose defect group is the given Suzuki group.

    Returns None when the parameters fall outside the case analysis.
    """
    m = params.m
    if params.family in ("B", "C", "D"):
        return {0, m}
    n = params.theta_order
    if n == 1 or m % n:
        return None
    r = m // n
    if n % 2 == 1:
        return {0, (m - r) // 2}
    if n == 2:
        return {0, m // 2}
    return {0, (m - 2 * r) // 2, m // 2}


@dataclass
class HeightSetReport:
    group: str
    observed: list[int]
    predicted: list[int] | None
    mode: str
    verdict: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "observed": self.observed,
            "predicted": self.predicted,
            "mode": self.mode,
            "verdict": self.verdict,
            "detail": self.detail,
        }


def verify_prop61(params: SuzukiParams, profile: HeightProfile, mode: str = "equal",
                  group: str = "") -> HeightSetReport:
    """Compare the observed height set with the prediction ('equal' or 'subset')."""
    if mode not in ("equal", "subset"):
        raise UsageError(f"unknown comparison mode {mode!r}")
    pred = predicted_heights(params)
    obs = sorted(profile.heights)
    if pred is None:
        return HeightSetReport(group, obs, None, mode, "inconclusive", "parameters outside the case analysis")
    ok = set(obs) == pred if mode == "equal" else set(obs) <= pred
    return HeightSetReport(group, obs, sorted(pred), mode, "pass" if ok else "fail")


@dataclass
class KBoundReport:
    k: int
    bound: int
    verdict: str


def k_bound_check(table: DegreeTable, sylow_order: int) -> KBoundReport:
    """k(G) <= |P|."""
    k = table.count
    return KBoundReport(k, sylow_order, "pass" if k <= sylow_order else "fail")


@dataclass
class TwoPartSurrogate:
    """2-parts of degrees in a group with several blocks, versus {1, 2^h, |P|}."""

    observed: list[int]
    expected: list[int]
    verdict: str
    note: str = field(default="block-partition-free surrogate")


def two_part_surrogate(table: DegreeTable, params: SuzukiParams) -> TwoPartSurrogate:
    d = v2(table.order)
    pred = predicted_heights(params) or set()
    expected = sorted({1, 1 << d} | {1 << h for h in pred})
    observed = sorted({1 << v2(x) for x in table.degrees})
    return TwoPartSurrogate(observed, expected, "pass" if observed == expected else "fail")
