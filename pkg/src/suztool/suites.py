"""Named verification suites and the group catalog."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from . import __version__
from .autos import (
    AutSubgroup,
    brute_force_aut,
    faithfulness,
    field_map,
    semilinear_aut_search,
    singer_map,
    verify_suzuki_property,
)
from .chartab.dixon import DegreeTable, character_degrees
from .chartab.heights import height_profile, predicted_heights, k_bound_check, two_part_surrogate, verify_prop61
from .core.classes import conjugacy_classes
from .core.iso import ISO_LIMIT
from .core.lattice import NORMAL_LIMIT, normal_subgroups
from .core.lemma22 import o_alpha_product_is_center, verify_lemma22
from .core.oracle import generating_set, whole_group
from .core.structure import center, derived_subgroup, frattini_2group, omega1
from .errors import ResourceError, UsageError
from .simple import identify_sylow, ti_check
from .specs import GroupHandle, parse_group
from .suzuki import SuzukiGroup

SCHEMA_VERSION = "1"
VERDICTS = ("pass", "fail", "inconclusive")
DIXON_CLASS_LIMIT = 512


@dataclass
class Claim:
    id: str
    anchor: str
    verdict: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "anchor": self.anchor, "verdict": self.verdict, "detail": self.detail}


@dataclass
class VerificationReport:
    suite: str
    group: str
    field_spec: str
    claims: list[Claim] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    duration: float | None = None

    def add(self, cid: str, anchor: str, ok: bool | None, detail: str = "") -> Claim:
        verdict = "inconclusive" if ok is None else ("pass" if ok else "fail")
        if any(c.id == cid for c in self.claims):
            raise AssertionError(f"duplicate claim id {cid}")
        c = Claim(cid, anchor, verdict, detail)
        self.claims.append(c)
        return c

    @property
    def verdict(self) -> str:
        vs = {c.verdict for c in self.claims}
        if "fail" in vs:
            return "fail"
        if "inconclusive" in vs:
            return "inconclusive"
        return "pass"

    def exit_code(self, strict: bool = False) -> int:
        v = self.verdict
        if v == "fail" or (strict and v == "inconclusive"):
            return 1
        return 0

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "toolkit_version": __version__,
            "suite": self.suite,
            "group": self.group,
            "field": self.field_spec,
            "verdict": self.verdict,
            "claims": [c.to_dict() for c in self.claims],
            "data": self.data,
        }
        if self.duration is not None:
            out["duration_s"] = round(self.duration, 3)
        return out


def _require(h: GroupHandle, kinds: tuple[str, ...], suite: str) -> None:
    if h.kind not in kinds:
        raise UsageError(f"suite {suite} does not apply to {h.spec} ({h.kind}); it needs {'/'.join(kinds)}")


def _new(suite: str, h: GroupHandle) -> VerificationReport:
    return VerificationReport(suite, h.spec, h.field_spec)


# -- higman ------------------------------------------------------------------------

def run_higman(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("suzuki", "sylow"), "higman")
    P, q = h.group, h.params.q
    rep = _new("higman", h)
    Z, O, F, D = center(P), omega1(P), frattini_2group(P), derived_subgroup(P)
    orders = f"|Z|={Z.order} |Omega1|={O.order} |Phi|={F.order} |[P,P]|={D.order}"
    rep.add("omega1-eq-center", "involutions together with 1 form the centre", O == Z, orders)
    rep.add("center-eq-frattini", "centre equals the Frattini subgroup", Z == F, orders)
    rep.add("frattini-eq-derived", "Frattini subgroup equals the derived subgroup", F == D, orders)
    rep.add("exponent-4", "exponent is 4", P.exponent == 4, f"exponent={P.exponent}")
    rep.add("center-order-q", "|Z(P)| = q", Z.order == q, f"|Z|={Z.order}, q={q}")
    rep.add("order-q2-or-q3", "|P| is q^2 or q^3", P.order in (q * q, q ** 3), f"|P|={P.order}")
    return rep


# -- lemma22 -----------------------------------------------------------------------

_LEMMA22_ANCHORS = {
    "a.i": "|Q ∩ Z| >= 2^(n(k-1)) when Q is not central",
    "a.ii": "Z <= Q and Z(Q) = Z when |QZ/Z| >= 4",
    "a.iii": "Q abelian when |QZ/Z| <= 2",
    "a.iv": "Z <= Q when |Z| = 8 and |QZ/Z| = 2",
    "b": "Z <= Q and Z(Q) = Z for non-central Q (types B, C, D)",
}


def run_lemma22(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("suzuki",), "lemma22")
    P: SuzukiGroup = h.suzuki
    if P.order > NORMAL_LIMIT:
        raise ResourceError(f"normal-subgroup enumeration is limited to order {NORMAL_LIMIT}")
    rep = _new("lemma22", h)
    Z = center(P)
    normals = normal_subgroups(P, threads)
    results = [verify_lemma22(P, Q, Z) for Q in normals]
    rep.data["normal_subgroups"] = len(normals)
    for cid in sorted({c.clause for r in results for c in r.clauses}):
        rows = [c for r in results for c in r.clauses if c.clause == cid]
        appl = sum(c.applicable for c in rows)
        bad = sum(not c.ok for c in rows)
        rep.add(f"clause-{cid}", _LEMMA22_ANCHORS[cid], bad == 0,
                f"{len(rows)} normal subgroups, {appl} applicable, {bad} failing")
    if P.family == "A":
        k = P.params.theta_order
        n = P.m // k
        want = 2 ** (n * (k - 1))
        sizes = sorted({len(P.tau_alpha_image(a)) for a in range(1, P.q)})
        rep.add("tau-image-order", "|Im tau_alpha| = 2^(n(k-1)) for every alpha != 0",
                sizes == [want], f"observed sizes {sizes}, expected {want}")
        bad = [(a, b) for a, b in combinations(range(1, P.q), 2) if not o_alpha_product_is_center(P, a, b)]
        rep.add("o-alpha-product", "O_a1 O_a2 = Z(P) for distinct nonzero a1, a2", not bad,
                f"{len(bad)} of {(P.q - 1) * (P.q - 2) // 2} pairs fail")
    return rep


# -- aut21 -------------------------------------------------------------------------

def run_aut21(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("suzuki",), "aut21")
    P: SuzukiGroup = h.suzuki
    if P.family != "A":
        raise UsageError("suite aut21 applies to type A groups")
    rep = _new("aut21", h)
    F = P.field
    xi = F.find_generator()
    s, f = singer_map(P, xi), field_map(P, 1)
    E = AutSubgroup.generated_by(P, [s, f])
    if P.order <= ISO_LIMIT:
        aut = brute_force_aut(P)
        rep.data["aut_order"] = aut.order
        rep.add("aut-odd-part", "|Aut(P)| has odd part 21 (order 64, type A)",
                aut.odd_part == 21 if P.m == 3 else None, f"|Aut|={aut.order}, odd part {aut.odd_part}")
        inside = all(aut.contains(g) for g in E)
        rep.add("contains-singer-field", "Aut(P) contains the Singer cycle extended by the field map",
                inside and E.order == (P.q - 1) * P.m,
                f"|<singer, frob>|={E.order}")
    else:
        aut = semilinear_aut_search(P)
        rep.data["aut_order"] = None
        rep.add("aut-odd-part", "|Aut(P)| has odd part 21 (order 64, type A)", None,
                f"brute force limited to order {ISO_LIMIT}")
        rep.add("contains-singer-field", "Aut(P) contains the Singer cycle extended by the field map",
                all(aut.contains(g) for g in E), f"|<singer, frob>|={E.order}, checked in the semilinear group")
    bad = []
    finv = f.inverse()
    for x in range(1, P.q):
        if f @ singer_map(P, x) @ finv != singer_map(P, F.mul(x, x)):
            bad.append(x)
    rep.add("field-singer-relation", "frob o singer(xi) o frob^-1 = singer(xi^2)", not bad,
            f"{P.q - 1 - len(bad)} of {P.q - 1} xi satisfy it")
    fr = faithfulness(aut)
    rep.add("odd-faithful-on-center", "odd-order automorphisms act faithfully on Z(P)",
            fr.odd_faithful_on_center, f"{fr.odd_maps} odd-order maps, {fr.kernel_on_center} trivial on Z")
    return rep


# -- suzuki-property ---------------------------------------------------------------

def run_suzuki_property(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("suzuki", "sylow"), "suzuki-property")
    P, q = h.group, h.params.q
    rep = _new("suzuki-property", h)
    r = verify_suzuki_property(P)
    rep.data.update(r.to_dict())
    ok = r.transitive if r.conclusive or r.transitive else None
    rep.add("transitive-on-involutions", "some automorphism group permutes the involutions transitively",
            ok, f"{r.method}: orbit sizes {r.orbit_sizes}")
    rep.add("involution-count", "there are q - 1 involutions", r.involutions == q - 1,
            f"{r.involutions} involutions, q - 1 = {q - 1}")
    return rep


# -- heights -----------------------------------------------------------------------

def degree_table(h: GroupHandle, threads: int = 1) -> DegreeTable:
    data = conjugacy_classes(h.group, threads)
    if data.count > DIXON_CLASS_LIMIT:
        raise ResourceError(f"{h.spec} has {data.count} classes; Dixon is limited to {DIXON_CLASS_LIMIT}")
    return character_degrees(h.group, data, threads)


def _height_claims(rep: VerificationReport, h: GroupHandle, T: DegreeTable, prefix: str = "") -> None:
    P_order = h.sylow.order
    prof = height_profile(T, P_order)
    kb = k_bound_check(T, P_order)
    pred = predicted_heights(h.params)
    entry = {"k": T.count, "heights": prof.to_dict(), "degrees": T.multiset(), "prime": T.prime,
             "prediction": None if pred is None else sorted(pred)}
    if h.kind in ("suzuki", "sylow"):
        r = verify_prop61(h.params, prof, "equal", h.spec)
        rep.add(prefix + "height-set", "nonzero k_h exactly for the predicted heights",
                None if r.verdict == "inconclusive" else r.verdict == "pass",
                f"observed {r.observed}, predicted {r.predicted}")
    elif h.kind == "sdp" and h.group.base.order == P_order:
        r = verify_prop61(h.params, prof, "subset", h.spec)
        rep.add(prefix + "height-set", "heights lie in the predicted set",
                None if r.verdict == "inconclusive" else r.verdict == "pass",
                f"observed {r.observed}, predicted {r.predicted}")
    else:
        s = two_part_surrogate(T, h.params)
        entry["two_parts"] = s.observed
        rep.add(prefix + "degree-two-parts", "2-parts of degrees are {1, 2^h, |P|} for predicted h",
                s.verdict == "pass", f"observed {s.observed}, expected {s.expected}")
    rep.add(prefix + "k-bound", "k <= |P|", kb.verdict == "pass", f"k={kb.k}, |P|={kb.bound}")
    rep.data[prefix.rstrip("/") or "table"] = entry


def run_heights(h: GroupHandle, threads: int = 1) -> VerificationReport:
    rep = _new("heights", h)
    _height_claims(rep, h, degree_table(h, threads))
    return rep


# -- ti / identify -----------------------------------------------------------------

def run_ti(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("ambient",), "ti")
    amb = h.ambient
    rep = _new("ti", h)
    r = ti_check(amb)
    rep.data.update(r.to_dict())
    q = amb.group.codec.F.q if amb.tag.startswith("sz") else 1 << (amb.group.codec.F.m // 2)
    expect = q * q + 1 if amb.tag.startswith("sz") else q ** 3 + 1
    rep.add("trivial-intersection", "distinct Sylow 2-subgroups meet trivially", r.ti,
            f"{r.conjugates} conjugates")
    rep.add("conjugate-count", "number of Sylow 2-subgroups", r.conjugates == expect,
            f"{r.conjugates} conjugates, expected {expect}")
    rep.add("orbit-stabilizer", "conjugates times |N(P)| equals |G|", r.orbit_stabilizer_ok,
            f"{r.conjugates} * {r.normalizer_order} vs {amb.group.order}")
    return rep


def _witness(S, P, phi: np.ndarray) -> str:
    gens = generating_set(whole_group(S))
    return "; ".join(f"{S.format(int(g))} -> {P.format(int(phi[g]))}" for g in gens)


def run_identify(h: GroupHandle, threads: int = 1) -> VerificationReport:
    _require(h, ("ambient", "sylow"), "identify")
    amb = h.ambient
    rep = _new("identify", h)
    P = SuzukiGroup(amb.sylow_params)
    phi = identify_sylow(amb, P)
    S = amb.sylow_group()
    rep.add("sylow-isomorphic", f"the Sylow 2-subgroup is a Suzuki group of type {P.family}",
            phi is not None, f"onto {P.name}: " + (_witness(S, P, phi) if phi is not None else "no isomorphism"))
    other = parse_group("su3(4)" if amb.tag.startswith("sz") else "sz(8)").ambient
    psi = identify_sylow(amb, other.sylow_group())
    zs, zo = center(S).order, center(other.sylow_group()).order
    rep.add("distinct-from-other", f"not isomorphic to the Sylow 2-subgroup of {other.tag}",
            psi is None, f"|Z| = {zs} vs {zo}")
    return rep


# -- cor42 -------------------------------------------------------------------------

COR42_LISTS = {
    "A": [
        ("P", "A(m=3,l=1)"),
        ("P:C7", "sdp(A(m=3,l=1); singer(xi=0x2))"),
        ("P:C3", "sdp(A(m=3,l=1); frob(j=1))"),
        ("P:(C7:C3)", "sdp(A(m=3,l=1); singer(xi=0x2), frob(j=1))"),
        ("Sz(8)", "sz(8)"),
        ("Aut(Sz(8))", "sdp(sz(8); frob(j=1))"),
    ],
    "B": [
        ("P", "B(m=2,l=0,eps=auto)"),
        ("P:C3", "sdp(syl(su3(4)); torus(lambda=0x6))"),
        ("SU3(4)", "su3(4)"),
    ],
}


def run_cor42(family: str, threads: int = 1) -> VerificationReport:
    family = family.strip().upper()
    if family not in COR42_LISTS:
        raise UsageError("cor42 takes family A or B")
    entries = COR42_LISTS[family]
    first = parse_group(entries[0][1])
    rep = VerificationReport("cor42", family, first.field_spec)
    rep.add("list-length", "number of groups in the list", len(entries) == (6 if family == "A" else 3),
            f"{len(entries)} entries")
    for label, spec in entries:
        h = parse_group(spec)
        _height_claims(rep, h, degree_table(h, threads), prefix=f"{label}/")
        rep.data[label]["spec"] = spec
        rep.data[label]["order"] = h.group.order
    return rep


# -- registry ----------------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    runner: Callable[..., VerificationReport]
    applies_to: str
    budget: str


SUITES: dict[str, Suite] = {
    s.name: s
    for s in [
        Suite("higman", run_higman, "Suzuki groups and syl(<ambient>)", "order <= 2^15, seconds; no class computations"),
        Suite("lemma22", run_lemma22, "Suzuki groups", f"order <= {NORMAL_LIMIT} (normal-subgroup enumeration), < 1 min"),
        Suite("aut21", run_aut21, "type A groups", f"brute-force Aut up to order {ISO_LIMIT}, < 5 min"),
        Suite("suzuki-property", run_suzuki_property, "Suzuki groups and syl(<ambient>)",
              f"semilinear search; brute force up to order {ISO_LIMIT}"),
        Suite("cor42", lambda h, threads=1: run_cor42(h, threads), "family letter A or B",
              "Dixon on up to 87360 elements, < 10 min"),
        Suite("heights", run_heights, "any catalog group", f"Dixon, at most {DIXON_CLASS_LIMIT} classes"),
        Suite("ti", run_ti, "sz(8), su3(4)", "closure plus 65 conjugates, < 1 min"),
        Suite("identify", run_identify, "sz(8), su3(4) and their Sylow subgroups",
              f"brute-force isomorphism up to order {ISO_LIMIT}"),
    ]
}


def run_suite(name: str, group: str, threads: int = 1, poly: int | None = None,
              timing: bool = False) -> VerificationReport:
    if name not in SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    start = time.perf_counter()
    if name == "cor42":
        rep = run_cor42(group, threads)
    else:
        rep = SUITES[name].runner(parse_group(group, poly), threads)
    if timing:
        rep.duration = time.perf_counter() - start
    return rep


# -- catalog -----------------------------------------------------------------------

CATALOG: list[tuple[str, str]] = [
    ("A(m=3,l=1)", "type A, theta = x^2, order 64"),
    ("A(m=3,l=2)", "type A, theta = x^4, order 64"),
    ("A(m=5,l=1)", "type A, order 1024"),
    ("A(m=5,l=2)", "type A, order 1024"),
    ("A(m=6,l=2)", "type A, theta of order 3, order 4096"),
    ("A(m=6,l=4)", "type A, theta of order 3, order 4096"),
    ("B(m=2,l=0,eps=auto)", "type B, order 64; the SU3(4) Sylow type"),
    ("B(m=3,l=1,eps=auto)", "type B, order 512"),
    ("C(m=3,eps=auto)", "type C, needs m >= 3 odd; l = (m-1)/2 is forced; order 512"),
    ("C(m=5,eps=auto)", "type C, needs m >= 3 odd; l = (m-1)/2 is forced; order 32768"),
    ("D(m=5,l=2,eps=0x6)", "type D, needs 5 | m and theta of order 5; order 32768"),
    ("sz(8)", "Suzuki simple group, order 29120"),
    ("su3(4)", "special unitary group, order 62400"),
]


def emit_catalog() -> dict:
    groups = [{"spec": s, "help": d} for s, d in sorted(CATALOG)]
    suites = [{"name": s.name, "applies_to": s.applies_to, "budget": s.budget} for s in
              sorted(SUITES.values(), key=lambda s: s.name)]
    return {"schema_version": SCHEMA_VERSION, "groups": groups, "suites": suites}
