from __future__ import annotations

import numpy as np
import pytest

from suztool.autos import AutSubgroup, involution_indices, semidirect_product
from suztool.core import brute_force_isomorphic, center, closure
from suztool.core.iso import is_isomorphism
from suztool.errors import ParameterError, ResourceError, UsageError
from suztool.gf2m import field
from suztool.simple import (
    MatrixCodec,
    build_ambient,
    build_su3,
    build_sz,
    conjugate_subgroup,
    frobenius_map,
    hermitian_ok,
    identify_sylow,
    ti_check,
    torus_automorphism,
)
from suztool.suzuki import SuzukiGroup, SuzukiParams, resolve_params


def test_codec_roundtrip_and_det():
    F = field(3)
    c = MatrixCodec(F, 3)
    rng = np.random.default_rng(0)
    M = rng.integers(0, 8, (10, 3, 3))
    assert np.array_equal(c.unpack(c.vpack(M)), M)
    assert c.pack(np.eye(3, dtype=np.int64)) == c.vpack(np.eye(3, dtype=np.int64)[None])[0]
    A, B = M[0], M[1]
    assert np.array_equal(c.det(c.matmul(A, B)), F.vmul(c.det(A), c.det(B)))
    assert c.format(c.pack(np.eye(3, dtype=np.int64))).startswith("[1,0,0")


def test_orders(sz8, su34):
    q = 8
    assert sz8.group.order == q * q * (q * q + 1) * (q - 1) == 29120
    q = 4
    assert su34.group.order == q ** 3 * (q ** 3 + 1) * (q * q - 1) == 62400
    assert sz8.sylow.order == su34.sylow.order == 64
    assert len(sz8.unipotent) == len(su34.unipotent) == 64


def test_unipotent_law_sz8(sz8):
    F = sz8.group.codec.F
    U, G = sz8.unipotent, sz8.group
    assert U[(0, 0)] == G.identity
    for (a, b), x in U.items():
        for (c, d), y in U.items():
            assert G.mul(x, y) == U[(a ^ c, b ^ d ^ F.mul(a, F.frobenius(2, c)))]


def test_unipotent_law_su34(su34):
    F = su34.group.codec.F
    U, G = su34.unipotent, su34.group
    assert U[(0, 0)] == G.identity
    for (a, b), x in U.items():
        for (c, d), y in U.items():
            assert G.mul(x, y) == U[(a ^ c, b ^ d ^ F.mul(a, F.pow(c, 4)))]


def test_matrix_invariants(sz8, su34):
    for amb in (sz8, su34):
        mats = amb.group.matrices()
        assert np.all(amb.group.codec.det(mats) == 1)
    assert np.all(hermitian_ok(su34.group.codec, su34.group.matrices(), 4))
    # Sz(8) preserves the symplectic form of the antidiagonal Weyl element
    c = sz8.group.codec
    J = np.array([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]], dtype=np.int64)
    M = sz8.group.matrices(np.arange(0, 29120, 97))
    lhs = c.matmul(c.matmul(np.swapaxes(M, -1, -2), np.broadcast_to(J, M.shape)), M)
    assert np.all(lhs == J)


def test_sylow_structure(sz8, su34):
    for amb, z in ((sz8, 8), (su34, 4)):
        S = amb.sylow_group()
        assert S.exponent == 4
        assert center(S).order == z
        assert len(involution_indices(S)) == z - 1


def test_identify_sylows(sz8, su34):
    S = sz8.sylow_group()
    phi = identify_sylow(sz8, SuzukiParams("A", 3, 2))
    assert phi is not None and is_isomorphism(S, SuzukiGroup(SuzukiParams("A", 3, 2)), phi)
    assert identify_sylow(sz8, SuzukiParams("A", 3, 1)) is not None
    b20 = resolve_params("B", 2, 0, "auto")
    assert identify_sylow(su34, b20) is not None
    assert identify_sylow(su34, SuzukiParams("A", 3, 1)) is None
    assert identify_sylow(sz8, b20) is None
    assert identify_sylow(sz8, sz8.sylow_group()) is not None


def test_ti_property(sz8, su34):
    for amb, nord in ((sz8, 448), (su34, 960)):
        rep = ti_check(amb)
        assert rep.ti and rep.conjugates == 65
        assert rep.normalizer_order == nord and rep.orbit_stabilizer_ok
        assert rep.to_dict()["conjugates"] == 65


def test_ti_fails_for_a_non_ti_subgroup():
    G = SuzukiGroup(SuzukiParams("A", 3, 1))
    H = closure(G, [G.element(1, 0)])
    rep = ti_check(G, H)
    assert not rep.ti and rep.conjugates > 1 and rep.orbit_stabilizer_ok
    with pytest.raises(UsageError):
        ti_check(G)


def test_conjugate_subgroup_by_normaliser_is_itself(sz8):
    t = sz8.torus[2]
    assert conjugate_subgroup(sz8.sylow, t) == sz8.sylow
    assert conjugate_subgroup(sz8.sylow, sz8.group.gens[-1]) != sz8.sylow


def test_torus_maps(sz8, su34):
    assert torus_automorphism(sz8, sz8.torus[1]).is_identity()
    assert torus_automorphism(su34, su34.torus[1]).is_identity()
    s7 = torus_automorphism(sz8, sz8.torus[sz8.group.codec.F.find_generator()])
    assert s7.order == 7
    S = sz8.sylow_group()
    assert [len(o) for o in AutSubgroup.generated_by(S, [s7]).orbits(involution_indices(S))] == [7]
    F = su34.group.codec.F
    h = torus_automorphism(su34, su34.torus[F.find_generator()])
    assert h.order == 15
    h3 = h.power(5)
    assert h3.order == 3
    S = su34.sylow_group()
    assert [len(o) for o in AutSubgroup.generated_by(S, [h3]).orbits(involution_indices(S))] == [3]
    with pytest.raises(UsageError):
        torus_automorphism(sz8, sz8.group.gens[-1])


def test_frobenius_extension(sz8):
    f = frobenius_map(sz8)
    assert f.order == 3
    X = semidirect_product(sz8.group, [f])
    assert X.order == 3 * 29120


def test_guards():
    with pytest.raises(ResourceError):
        build_sz(32)
    with pytest.raises(ParameterError):
        build_sz(16)
    with pytest.raises(ParameterError):
        build_sz(2)
    with pytest.raises(ResourceError):
        build_su3(8)
    with pytest.raises(ParameterError):
        build_su3(6)
    with pytest.raises(UsageError):
        build_ambient("psl(2,8)")


def test_identify_guard(sz8):
    with pytest.raises(ResourceError):
        brute_force_isomorphic(SuzukiGroup(SuzukiParams("A", 5, 1)), SuzukiGroup(SuzukiParams("A", 5, 2)))
