"""Higman's four families of Suzuki 2-groups, built from their explicit multiplication laws.

Type A elements are pairs (alpha, beta) packed as ``alpha << m | beta``; types
B, C and D are triples packed as ``alpha << 2m | beta << m | gamma``.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import numpy as np

from .core.oracle import OracleGroup, Subgroup
from .errors import DomainError, ParameterError, SpecParseError, UsageError
from .gf2m import GF2m, field

FAMILIES = ("A", "B", "C", "D")


class EvenOrderThetaWarning(UserWarning):
    """Family A built with a Frobenius twist of even order."""


@dataclass(frozen=True)
class SuzukiParams:
    family: str
    m: int
    l: int
    epsilon: int | None = None
    poly: int | None = None

    @property
    def field(self) -> GF2m:
        return field(self.m, self.poly)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def theta_order(self) -> int:
        return self.field.frobenius_order(self.l)

    def spec(self) -> str:
        parts = [f"m={self.m}"]
        if self.family != "C":
            parts.append(f"l={self.l}")
        if self.epsilon is not None:
            parts.append(f"eps={self.epsilon:#x}")
        if self.poly is not None:
            parts.append(f"poly={self.poly:#x}")
        return f"{self.family}({','.join(parts)})"


def check_theta(family: str, m: int, l: int) -> None:
    """Raise ParameterError unless (m, l) satisfies the family's twist constraint."""
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}")
    if not 1 <= m <= 16:
        raise ParameterError(f"m must be in 1..16, got {m}")
    if not 0 <= l < m:
        raise ParameterError(f"Frobenius index l must be in 0..{m - 1}, got {l}")
    if family == "A":
        if l == 0:
            raise ParameterError("family A needs a nontrivial twist (1 <= l <= m-1)")
    elif family == "B":
        if m < 2:
            raise ParameterError("family B needs m >= 2")
    elif family == "C":
        if m < 3 or m % 2 == 0:
            raise ParameterError("family C needs m >= 3 odd")
        if (2 * l + 1) % m:
            raise ParameterError("family C needs theta^2 followed by squaring to be the identity, i.e. 2l+1 = 0 mod m")
    elif family == "D":
        if m % 5:
            raise ParameterError("family D needs 5 | m")
        if m // gcd(m, l) != 5:
            raise ParameterError("family D needs theta of order 5")


def family_c_twist(m: int) -> int:
    if m < 3 or m % 2 == 0:
        raise ParameterError("family C needs m >= 3 odd")
    return (m - 1) // 2


def _excluded_values(family: str, F: GF2m, l: int) -> np.ndarray:
    """Vector of g(rho) over rho != 0 for the family's excluded form."""
    rho = np.arange(1, F.q, dtype=np.int64)
    rinv = F.vinv(rho)
    th = lambda x, k=1: F.vfrob(l * k, x)
    if family == "B":
        return rinv ^ th(rho)
    if family == "C":
        return rinv ^ F.vmul(rho, th(F.vmul(rho, rho)))
    if family == "D":
        return rinv ^ F.vmul(F.vmul(rho, th(rho, 4)), th(rho))
    raise UsageError("epsilon conditions exist only for families B, C and D")


def epsilon_valid(params: SuzukiParams) -> bool:
    """True iff no nonzero rho hits epsilon under the family's excluded equation."""
    if params.family == "A":
        raise UsageError("family A has no epsilon parameter")
    if params.epsilon is None:
        raise UsageError("epsilon not set")
    F = params.field
    F.check(params.epsilon)
    return bool(not np.any(_excluded_values(params.family, F, params.l) == params.epsilon))


def find_epsilons(family: str, m: int, l: int | None = None, poly: int | None = None) -> list[int]:
    """All valid epsilons, in increasing bitmask order (possibly empty)."""
    if family == "A":
        raise UsageError("family A has no epsilon parameter")
    if family == "C" and l is None:
        l = family_c_twist(m)
    if l is None:
        raise ParameterError("Frobenius index l is required")
    check_theta(family, m, l)
    F = field(m, poly)
    excluded = np.zeros(F.q, dtype=bool)
    excluded[_excluded_values(family, F, l)] = True
    return [int(e) for e in np.flatnonzero(~excluded)]


def resolve_params(family: str, m: int, l: int | None = None, epsilon: int | str | None = "auto",
                   poly: int | None = None) -> SuzukiParams:
    """Validate and complete parameters; ``epsilon='auto'`` picks the least valid value."""
    if family == "C" and l is None:
        l = family_c_twist(m)
    if l is None:
        raise ParameterError("Frobenius index l is required")
    check_theta(family, m, l)
    F = field(m, poly)
    if family == "A":
        if epsilon not in (None, "auto"):
            raise ParameterError("family A takes no epsilon")
        order = F.frobenius_order(l)
        if order % 2 == 0:
            warnings.warn(
                f"A(m={m},l={l}): theta has even order {order}; the Suzuki property is not guaranteed",
                EvenOrderThetaWarning,
                stacklevel=2,
            )
        return SuzukiParams("A", m, l, None, poly)
    if epsilon in (None, "auto"):
        eps = find_epsilons(family, m, l, poly)
        if not eps:
            raise ParameterError(f"{family}(m={m},l={l}) admits no valid epsilon")
        epsilon = eps[0]
    params = SuzukiParams(family, m, l, int(epsilon), poly)
    if not epsilon_valid(params):
        raise ParameterError(f"epsilon {int(epsilon):#x} fails the family {family} condition")
    return params


class SuzukiGroup(OracleGroup):
    """A Suzuki 2-group of type A, B, C or D with a fully materialised universe."""

    def __init__(self, params: SuzukiParams):
        self.params = params
        self.field = F = params.field
        self.m = m = params.m
        self.q = q = F.q
        self.family = params.family
        self.ncoords = 2 if params.family == "A" else 3
        self._mask = q - 1
        n = q ** self.ncoords
        # F_2-bases of each coordinate generate P
        gens = [self.pack(*c) for c in self._basis_coords()]
        super().__init__(
            np.arange(n, dtype=np.int64),
            self._vmul_keys,
            0,
            gens,
            name=params.spec(),
            formatter=self.format_key,
        )

    def _basis_coords(self):
        for c in range(self.ncoords):
            for i in range(self.m):
                v = [0] * self.ncoords
                v[c] = 1 << i
                yield tuple(v)

    # -- packing ------------------------------------------------------------
    def pack(self, *coords: int) -> int:
        if len(coords) != self.ncoords:
            raise DomainError(f"{self.family} elements have {self.ncoords} coordinates")
        key = 0
        for c in coords:
            key = (key << self.m) | self.field.check(int(c))
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.ncoords):
            out.append(key & self._mask)
            key >>= self.m
        return tuple(reversed(out))

    def vunpack(self, keys):
        keys = np.asarray(keys, dtype=np.int64)
        m, mask = self.m, self._mask
        if self.ncoords == 2:
            return keys >> m, keys & mask
        return keys >> (2 * m), (keys >> m) & mask, keys & mask

    def vpack(self, *coords):
        m = self.m
        if self.ncoords == 2:
            return (coords[0] << m) | coords[1]
        return (coords[0] << (2 * m)) | (coords[1] << m) | coords[2]

    def format_key(self, key: int) -> str:
        return "(" + ",".join(GF2m.format(c) for c in self.unpack(int(key))) + ")"

    def element(self, *coords: int) -> int:
        """Index of the element with the given coordinates."""
        return self.pack(*coords)

    # -- the multiplication laws ---------------------------------------------
    def correction(self, a1, b1, a2, b2):
        """Vectorised correction term added to the last coordinate of a product."""
        F, l = self.field, self.params.l
        th = lambda x, k=1: F.vfrob(l * k, x)
        base = F.vmul(a1, th(a2))
        fam = self.family
        if fam == "A":
            return base
        eps = self.params.epsilon
        if fam == "B":
            return base ^ F.vmul(eps, F.vmul(a1, th(b2))) ^ F.vmul(b1, th(b2))
        if fam == "C":
            return base ^ F.vmul(eps, F.vmul(F.vsqrt(a1), th(F.vmul(b2, b2)))) ^ F.vmul(b1, b2)
        return base ^ F.vmul(eps, F.vmul(th(a1, 3), th(b2))) ^ F.vmul(b1, th(b2, 2))

    def _vmul_keys(self, x, y):
        if self.ncoords == 2:
            a1, b1 = self.vunpack(x)
            a2, b2 = self.vunpack(y)
            return self.vpack(a1 ^ a2, b1 ^ b2 ^ self.correction(a1, None, a2, None))
        a1, b1, c1 = self.vunpack(x)
        a2, b2, c2 = self.vunpack(y)
        return self.vpack(a1 ^ a2, b1 ^ b2, c1 ^ c2 ^ self.correction(a1, b1, a2, b2))

    def multiply(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        """Scalar product of coordinate tuples, written straight from the laws."""
        F, l = self.field, self.params.l
        th = lambda v, k=1: F.frobenius(l * k, v)
        if self.family == "A":
            (a1, b1), (a2, b2) = x, y
            return (a1 ^ a2, b1 ^ b2 ^ F.mul(a1, th(a2)))
        (a1, b1, c1), (a2, b2, c2) = x, y
        eps = self.params.epsilon
        corr = F.mul(a1, th(a2))
        if self.family == "B":
            corr ^= F.mul(eps, F.mul(a1, th(b2))) ^ F.mul(b1, th(b2))
        elif self.family == "C":
            corr ^= F.mul(eps, F.mul(F.sqrt(a1), th(F.mul(b2, b2)))) ^ F.mul(b1, b2)
        else:
            corr ^= F.mul(eps, F.mul(th(a1, 3), th(b2))) ^ F.mul(b1, th(b2, 2))
        return (a1 ^ a2, b1 ^ b2, c1 ^ c2 ^ corr)

    @property
    def identity_coords(self) -> tuple[int, ...]:
        return (0,) * self.ncoords

    def inverse(self, x: tuple[int, ...]) -> tuple[int, ...]:
        """x^(o(x)-1), with o(x) in {1, 2, 4}."""
        e = self.identity_coords
        if x == e:
            return x
        sq = self.multiply(x, x)
        if sq == e:
            return x
        if self.multiply(sq, sq) != e:
            raise DomainError("element order exceeds 4; parameters do not give a Suzuki group")
        return self.multiply(sq, x)

    # -- distinguished subsets -----------------------------------------------
    def involutions(self) -> frozenset[int]:
        idx = self.all
        sq = self.mul(idx, idx)
        return frozenset(int(i) for i in np.flatnonzero((sq == self.identity) & (idx != self.identity)))

    @cached_property
    def expected_center(self) -> Subgroup:
        """The last-coordinate axis {(0,...,0,z)}."""
        return Subgroup.from_indices(self, np.arange(self.q, dtype=np.int64))

    def tau_alpha_image(self, alpha: int) -> frozenset[int]:
        """Image of x -> alpha*theta(x) + x*theta(alpha) as a subset of GF(q)."""
        if self.family != "A":
            raise UsageError("tau_alpha is defined for family A only")
        if alpha == 0:
            raise DomainError("tau_alpha needs alpha != 0")
        F, l = self.field, self.params.l
        x = F.elements
        img = F.vmul(alpha, F.vfrob(l, x)) ^ F.vmul(x, F.frobenius(l, alpha))
        return frozenset(int(v) for v in np.unique(img))

    def o_alpha(self, alpha: int) -> Subgroup:
        """{(0, beta) : beta in Im(tau_alpha)} as a subgroup of the centre."""
        return Subgroup.from_indices(self, sorted(self.tau_alpha_image(alpha)))


def theta_commutator(P: SuzukiGroup, alpha: int, beta: int, x: int) -> tuple[int, int]:
    """[(alpha,beta),(x,0)] computed through the group law (family A)."""
    g = P.element(alpha, beta)
    h = P.element(x, 0)
    return P.unpack(int(P.keys[P.commutator(g, h)]))


_GROUP_SPEC = re.compile(r"^\s*([ABCD])\s*\((.*)\)\s*$")


def parse_suzuki_spec(text: str, poly: int | None = None) -> SuzukiParams:
    """Parse ``A(m=3,l=1)``, ``B(m=2,l=1,eps=auto)``, ``C(m=3,eps=0x5)`` etc."""
    match = _GROUP_SPEC.match(text)
    if not match:
        raise SpecParseError(f"not a Suzuki group spec: {text!r}")
    family = match.group(1)
    fields: dict[str, str] = {}
    body = match.group(2).strip()
    if body:
        for part in body.split(","):
            if "=" not in part:
                raise SpecParseError(f"expected key=value in {text!r}, got {part!r}")
            k, v = (s.strip() for s in part.split("=", 1))
            if k in fields:
                raise SpecParseError(f"duplicate key {k!r} in {text!r}")
            fields[k] = v
    unknown = set(fields) - {"m", "l", "eps", "poly"}
    if unknown:
        raise SpecParseError(f"unknown keys {sorted(unknown)} in {text!r}")
    if "m" not in fields:
        raise SpecParseError(f"missing m in {text!r}")
    try:
        m = int(fields["m"], 0)
        l = int(fields["l"], 0) if "l" in fields else None
        eps: int | str | None
        if "eps" in fields:
            eps = "auto" if fields["eps"] == "auto" else int(fields["eps"], 0)
        else:
            eps = "auto"
        if "poly" in fields:
            poly = int(fields["poly"], 0)
    except ValueError as exc:
        raise SpecParseError(f"bad integer in {text!r}: {exc}") from None
    if family == "A" and "eps" in fields:
        raise SpecParseError("family A takes no eps")
    if family != "C" and l is None:
        raise SpecParseError(f"family {family} needs l")
    if family == "C" and l is not None and l != family_c_twist(m):
        raise ParameterError(f"family C at m={m} forces l={family_c_twist(m)}")
    return resolve_params(family, m, l, None if family == "A" else eps, poly)


def build(params: SuzukiParams | str, poly: int | None = None) -> SuzukiGroup:
    if isinstance(params, str):
        params = parse_suzuki_spec(params, poly)
    return SuzukiGroup(params)
