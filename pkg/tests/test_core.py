from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import pairwise_class_count, suzuki_law, table_inverse, tuples
from suztool.autos import semidirect_product, singer_map
from suztool.core import (
    abelian_group,
    all_subgroups,
    brute_force_isomorphic,
    center,
    closure,
    conjugacy_classes,
    conjugacy_classes_pairwise,
    cyclic_group,
    derived_subgroup,
    direct_product,
    fingerprint,
    frattini_2group,
    normal_subgroups,
    omega1,
    quotient,
    relabel,
    trivial_subgroup,
    verify_lemma22,
    whole_group,
)
from suztool.core.iso import is_isomorphism
from suztool.core.lemma22 import subgroup_center
from suztool.core.oracle import Subgroup, generating_set, subgroup_as_group
from suztool.core.structure import derived_by_all_commutators, derived_series
from suztool.errors import ResourceError, UsageError

from conftest import group


def _coords(P, sub):
    return {P.unpack(int(P.keys[i])) for i in sub.indices}


# -- closure ------------------------------------------------------------------------

def test_closure_examples(a31):
    assert closure(a31, [a31.identity]) == trivial_subgroup(a31)
    z = a31.element(0, 1)
    assert set(closure(a31, [z]).indices) == {a31.identity, z}
    assert closure(a31, a31.gens).order == 64


@given(st.sampled_from(["A(m=3,l=1)", "B(m=2,l=0,eps=auto)", "A(m=5,l=1)"]),
       st.lists(st.integers(0, 1023), min_size=1, max_size=4))
def test_closure_idempotent_and_closed(spec, picks):
    P = group(spec)
    S = closure(P, [p % P.order for p in picks])
    assert closure(P, S.indices) == S
    idx = S.indices
    assert np.all(S.mask[P.mul(idx[:, None], idx[None, :])])
    assert np.all(S.mask[P.inverses[idx]])
    assert closure(P, generating_set(S)) == S


# -- structural subgroups -----------------------------------------------------------

def test_center_examples(a31, b21):
    assert _coords(a31, center(a31)) == {(0, b) for b in range(8)}
    assert _coords(b21, center(b21)) == {(0, 0, c) for c in range(4)}
    A = abelian_group([4, 2])
    assert center(A) == whole_group(A)


@pytest.mark.parametrize("spec", ["A(m=3,l=1)", "B(m=2,l=1,eps=auto)", "B(m=2,l=0,eps=auto)", "C(m=3,eps=auto)"])
def test_higman_identities(spec):
    P = group(spec)
    Z = center(P)
    assert derived_subgroup(P) == Z == frattini_2group(P) == omega1(P)
    assert P.exponent == 4


def test_derived_matches_all_commutators_oracle(a31, b20):
    for P in (a31, b20):
        assert derived_subgroup(P) == derived_by_all_commutators(P)
    assert derived_subgroup(abelian_group([2, 4])).order == 1


def test_frattini_examples():
    assert frattini_2group(abelian_group([2, 2])).order == 1
    D = group("D(m=5,l=1,eps=auto)")
    Phi = frattini_2group(D)
    assert Phi.order == 32 and Phi == center(D)
    with pytest.raises(UsageError):
        frattini_2group(cyclic_group(3))


def test_d51_auto_epsilon_is_not_suzuki():
    # omega1 is everything: the epsilon chosen by the stated predicate leaves involutions outside Z
    D = group("D(m=5,l=1,eps=auto)")
    assert omega1(D).order == D.order


def test_omega1_and_exponent(c3):
    C4 = cyclic_group(4)
    assert omega1(C4).order == 2
    assert c3.exponent == 4
    assert cyclic_group(6).exponent == 6


def test_centre_is_normal_and_in_every_maximal_abelian(a31):
    Z = center(a31)
    assert Z.is_normal()
    abelian = [H for H in all_subgroups(a31) if H.is_abelian()]
    maximal = [H for H in abelian if not any(K.order > H.order and H <= K for K in abelian)]
    assert maximal and all(Z <= H for H in maximal)


# -- conjugacy ----------------------------------------------------------------------

def test_class_count_a31_agrees_with_pairwise_oracle(a31):
    law = suzuki_law("A", 1, None, 8, 0b1011)
    elems = tuples("A", 8)
    inv = table_inverse(elems, law, (0, 0))
    oracle = pairwise_class_count(elems, law, inv.__getitem__)
    assert oracle == 22
    data = conjugacy_classes(a31)
    assert data.count == 22
    assert data.sizes[data.class_of[a31.identity]] == 1
    assert int((data.sizes == 1).sum()) >= 8


def _small_groups():
    a31 = group("A(m=3,l=1)")
    return [
        a31,
        group("B(m=2,l=0,eps=auto)"),
        group("B(m=2,l=1,eps=auto)"),
        group("C(m=3,eps=auto)"),
        semidirect_product(a31, [singer_map(a31, 2)]),
        direct_product(cyclic_group(3), abelian_group([2, 2])),
    ]


@pytest.mark.parametrize("G", _small_groups(), ids=lambda G: G.name)
def test_orbit_classes_agree_with_pairwise_classes(G):
    data = conjugacy_classes(G)
    assert data.same_as(conjugacy_classes_pairwise(G))
    assert int(data.sizes.sum()) == G.order
    assert all(G.order % int(s) == 0 for s in data.sizes)
    assert int((data.sizes == 1).sum()) == center(G).order
    reps = data.reps
    assert all(int(r) == int(data.members(i).min()) for i, r in enumerate(reps))


def test_classes_independent_of_thread_count():
    P = group("A(m=5,l=1)")
    one = conjugacy_classes(P, threads=1)
    four = conjugacy_classes(group("A(m=5,l=1)"), threads=4)
    assert one.same_as(four)
    assert np.array_equal(one.reps, four.reps)


# -- normal subgroups ---------------------------------------------------------------

@pytest.mark.parametrize("spec,count", [("A(m=3,l=1)", 31), ("B(m=2,l=0,eps=auto)", 71), ("B(m=2,l=1,eps=auto)", 91)])
def test_normal_subgroups_match_exhaustive_lattice(spec, count):
    P = group(spec)
    Ns = normal_subgroups(P)
    oracle = {H for H in all_subgroups(P) if H.is_normal()}
    assert set(Ns) == oracle
    assert len(Ns) == count
    assert Ns[0] == trivial_subgroup(P) and Ns[-1] == whole_group(P)
    assert all(N.is_normal() for N in Ns)


def test_a31_has_no_normal_c4_or_c4xc2(a31):
    C4, C42 = abelian_group([4]), abelian_group([4, 2])
    for N in normal_subgroups(a31):
        if N.order == 4:
            assert brute_force_isomorphic(subgroup_as_group(N), C4) is None
        if N.order == 8:
            assert brute_force_isomorphic(subgroup_as_group(N), C42) is None


def test_normal_subgroups_guard():
    with pytest.raises(ResourceError):
        normal_subgroups(group("C(m=5,eps=auto)"))


# -- normal-subgroup clauses ----------------------------------------------------------

def test_normal_clauses_hold_for_a31(a31):
    Z = center(a31)
    for Q in normal_subgroups(a31):
        rep = verify_lemma22(a31, Q, Z)
        if rep.image_order >= 4:
            assert Z <= Q and subgroup_center(Q) == Z
        if Q <= Z:
            assert Q.is_abelian()
        assert rep.ok


def test_type_b_noncentral_normals_contain_centre(b20):
    Z = center(b20)
    noncentral = [Q for Q in normal_subgroups(b20) if not Q <= Z]
    assert noncentral and all(Z <= Q for Q in noncentral)


def test_normal_clauses_reject_non_normal(a31):
    Q = closure(a31, [a31.element(1, 0)])
    assert not Q.is_normal()
    with pytest.raises(UsageError):
        verify_lemma22(a31, Q)


# -- quotients ----------------------------------------------------------------------

def test_quotient_examples(a31, b20):
    assert quotient(a31, whole_group(a31)).order == 1
    for P, n in ((a31, 8), (b20, 16)):
        Q = quotient(P, center(P))
        assert Q.order == n and Q.is_abelian() and Q.exponent == 2
    with pytest.raises(UsageError):
        quotient(a31, closure(a31, [a31.element(1, 0)]))


@pytest.mark.parametrize("spec", ["A(m=3,l=1)", "C(m=3,eps=auto)"])
def test_quotient_by_derived_is_abelian(spec):
    P = group(spec)
    D = derived_subgroup(P)
    Q = quotient(P, D)
    assert Q.order == P.order // D.order and Q.is_abelian()


# -- isomorphism and fingerprints ---------------------------------------------------

def test_isomorphism_examples(a31, a32, b20):
    ident = brute_force_isomorphic(a31, a31)
    assert ident is not None and is_isomorphism(a31, a31, ident)
    phi = brute_force_isomorphic(a31, a32)
    assert phi is not None and is_isomorphism(a31, a32, phi)
    assert brute_force_isomorphic(a31, b20) is None
    with pytest.raises(ResourceError):
        brute_force_isomorphic(group("A(m=5,l=1)"), group("A(m=5,l=2)"))


def test_fingerprint_invariance(a31, b20):
    perm = np.random.default_rng(5).permutation(a31.order)
    R = relabel(a31, perm)
    assert fingerprint(R) == fingerprint(a31)
    f, g = fingerprint(a31), fingerprint(b20)
    assert f.order == 64 and (f.center_order, g.center_order) == (8, 4)
    assert json.loads(f.to_json()) == f.to_dict()
    assert derived_series(a31) == [64, 8, 1]


def test_subgroup_serialisation_is_sorted(a31):
    s = center(a31).serialize()
    assert s == sorted(s) and len(s) == 8


@given(st.integers(0, 63), st.integers(0, 63))
def test_subgroup_intersection_is_subgroup(x, y):
    P = group("A(m=3,l=1)")
    H, K = closure(P, [x]), closure(P, [y])
    I = H & K
    assert isinstance(I, Subgroup) and closure(P, I.indices) == I
