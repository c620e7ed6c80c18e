"""Group spec strings.

Grammar::

    A(m=3,l=1)   B(m=2,l=0,eps=auto)   C(m=3,eps=0x1)   D(m=5,l=2,eps=0x6)
    sz(8)   su3(4)   syl(sz(8))   syl(su3(4))
    sdp(<base>; <map>, <map>, ...)
        base: a Suzuki spec, an ambient group, or syl(<ambient>)
        map:  singer(xi=0x2) | frob(j=1) | torus(lambda=0x6)

``gf(m=..,poly=..)`` is recognised so that a bad polynomial is reported as
such, but a field is not a group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .autos import GroupMap, SemidirectProduct, field_map, singer_map
from .core.oracle import OracleGroup, Subgroup, whole_group
from .errors import SpecParseError, UsageError
from .gf2m import parse_field_spec
from .simple import AmbientGroup, build_ambient, frobenius_map, torus_automorphism
from .suzuki import SuzukiGroup, SuzukiParams, parse_suzuki_spec


@dataclass
class GroupHandle:
    spec: str
    group: OracleGroup
    params: SuzukiParams  # type of the Sylow 2-subgroup
    sylow: Subgroup
    kind: str  # "suzuki" | "ambient" | "sylow" | "sdp"
    suzuki: SuzukiGroup | None = None
    ambient: AmbientGroup | None = None

    @property
    def field_spec(self) -> str:
        return self.params.field.spec()


_CALL = re.compile(r"^\s*([A-Za-z][A-Za-z0-9]*)\s*\((.*)\)\s*$", re.S)


def _split_top(text: str, sep: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError(f"unbalanced parentheses in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _kwargs(body: str, allowed: set[str], where: str) -> dict[str, int]:
    out: dict[str, int] = {}
    for part in _split_top(body, ","):
        if not part:
            continue
        if "=" not in part:
            raise SpecParseError(f"expected key=value in {where!r}, got {part!r}")
        k, v = (s.strip() for s in part.split("=", 1))
        if k not in allowed:
            raise SpecParseError(f"unknown key {k!r} in {where!r}")
        try:
            out[k] = int(v, 0)
        except ValueError:
            raise SpecParseError(f"bad integer {v!r} in {where!r}") from None
    return out


def _base(text: str, poly: int | None) -> GroupHandle:
    m = _CALL.match(text)
    if not m:
        raise SpecParseError(f"unrecognised group spec {text!r}")
    head = m.group(1)
    if head in ("A", "B", "C", "D"):
        params = parse_suzuki_spec(text, poly)
        P = SuzukiGroup(params)
        return GroupHandle(params.spec(), P, params, whole_group(P), "suzuki", suzuki=P)
    if head in ("sz", "su3"):
        amb = build_ambient(text)
        return GroupHandle(amb.tag, amb.group, amb.sylow_params, amb.sylow, "ambient", ambient=amb)
    if head == "syl":
        amb = build_ambient(m.group(2))
        S = amb.sylow_group()
        return GroupHandle(f"syl({amb.tag})", S, amb.sylow_params, whole_group(S), "sylow", ambient=amb)
    if head == "gf":
        F = parse_field_spec(text)
        raise UsageError(f"{F.spec()} is a field, not a group")
    raise SpecParseError(f"unknown group constructor {head!r}")


def _map(base: GroupHandle, text: str) -> GroupMap:
    m = _CALL.match(text)
    if not m:
        raise SpecParseError(f"unrecognised map spec {text!r}")
    head, body = m.group(1), m.group(2)
    if head == "singer":
        kw = _kwargs(body, {"xi"}, text)
        if base.suzuki is None or "xi" not in kw:
            raise UsageError("singer(xi=..) needs a type A Suzuki base")
        return singer_map(base.suzuki, kw["xi"])
    if head == "frob":
        kw = _kwargs(body, {"j"}, text)
        j = kw.get("j", 1)
        if base.suzuki is not None:
            return field_map(base.suzuki, j)
        if base.kind == "ambient":
            return frobenius_map(base.ambient).power(j)
        raise UsageError("frob(j=..) needs a Suzuki or ambient base")
    if head == "torus":
        kw = _kwargs(body, {"lambda"}, text)
        if base.kind != "sylow" or "lambda" not in kw:
            raise UsageError("torus(lambda=..) needs a syl(<ambient>) base")
        amb = base.ambient
        if kw["lambda"] not in amb.torus:
            raise UsageError(f"lambda={kw['lambda']:#x} is not a nonzero field element")
        phi = torus_automorphism(amb, amb.torus[kw["lambda"]])
        return GroupMap(base.group, phi.images, f"torus({kw['lambda']:#x})")
    raise SpecParseError(f"unknown map {head!r}")


def parse_group(text: str, poly: int | None = None) -> GroupHandle:
    text = text.strip()
    m = _CALL.match(text)
    if m and m.group(1) == "sdp":
        parts = _split_top(m.group(2), ";")
        if len(parts) != 2:
            raise SpecParseError(f"sdp needs '<base>; <maps>' in {text!r}")
        base = _base(parts[0], poly)
        if base.kind == "ambient" and base.ambient is None:
            raise UsageError("unsupported sdp base")
        maps = [_map(base, s) for s in _split_top(parts[1], ",") if s]
        if not maps:
            raise SpecParseError("sdp needs at least one map")
        labels = ", ".join(g.label for g in maps)
        name = f"sdp({base.spec}; {labels})"
        X = SemidirectProduct(base.group, maps, name=name)
        sylow_idx = base.sylow.indices * X.ne + X.e_identity
        return GroupHandle(name, X, base.params, Subgroup.from_indices(X, sylow_idx), "sdp",
                           suzuki=base.suzuki, ambient=base.ambient)
    return _base(text, poly)
