from __future__ import annotations

import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import fmul, frob, suzuki_law, tuples
from suztool.core.structure import center
from suztool.errors import DomainError, ParameterError, SpecParseError, UsageError
from suztool.suzuki import (
    EvenOrderThetaWarning,
    SuzukiGroup,
    SuzukiParams,
    epsilon_valid,
    find_epsilons,
    parse_suzuki_spec,
    resolve_params,
)

from conftest import group

ORDER_64 = ["A(m=3,l=1)", "A(m=3,l=2)", "B(m=2,l=0,eps=auto)", "B(m=2,l=1,eps=auto)"]
ORDER_512 = ["B(m=3,l=1,eps=auto)", "B(m=3,l=0,eps=auto)", "C(m=3,eps=auto)"]


def _oracle(P: SuzukiGroup):
    p = P.params
    return suzuki_law(p.family, p.l, p.epsilon, P.q, P.field.poly)


def test_identity_and_simple_products(a31):
    for x in tuples("A", 8)[:20]:
        assert a31.multiply(x, (0, 0)) == x
    assert a31.multiply((1, 0), (1, 0)) == (0, 1)


def test_a31_product_against_field_oracle(a31):
    # x * theta(x^2) = x * x^4 = x^5, reduced under x^3 + x + 1
    beta = fmul(0b010, frob(0b100, 1, 0b1011), 0b1011)
    assert beta == 0b111
    assert a31.multiply((0b010, 0), (0b100, 0)) == (0b110, beta)


@pytest.mark.parametrize("spec", ORDER_64)
def test_law_matches_formula_oracle_on_all_pairs(spec):
    P = group(spec)
    law = _oracle(P)
    elems = tuples(P.family, P.q)
    for x in elems:
        for y in elems:
            assert P.multiply(x, y) == law(x, y)


@pytest.mark.parametrize("spec", ORDER_512 + ["C(m=5,eps=auto)", "D(m=5,l=2,eps=0x6)"])
def test_law_matches_formula_oracle_on_random_pairs(spec):
    P = group(spec)
    law = _oracle(P)
    rng = np.random.default_rng(1)
    for x, y in rng.integers(0, P.order, (3000, 2)):
        tx, ty = P.unpack(int(P.keys[x])), P.unpack(int(P.keys[y]))
        assert P.unpack(int(P.keys[P.mul(x, y)])) == law(tx, ty)


@pytest.mark.parametrize("spec", ORDER_64 + ORDER_512)
def test_associativity_exhaustive(spec):
    P = group(spec)
    T = P.cayley_table()
    for z in range(P.order):
        assert np.array_equal(T[T, z], T[:, T[:, z]])


@pytest.mark.parametrize("spec", ["A(m=6,l=2)", "C(m=5,eps=auto)", "D(m=5,l=2,eps=0x6)"])
def test_associativity_random(spec):
    P = group(spec)
    rng = np.random.default_rng(2)
    a, b, c = rng.integers(0, P.order, (3, 100_000))
    assert np.array_equal(P.mul(P.mul(a, b), c), P.mul(a, P.mul(b, c)))


@pytest.mark.parametrize("spec", ORDER_64 + ORDER_512)
def test_inverse_law_exhaustive(spec):
    P = group(spec)
    x = P.all
    assert np.all(P.mul(x, P.inverses) == P.identity)
    for t in list(map(P.unpack, P.keys[:50].tolist())):
        assert P.multiply(t, P.inverse(t)) == P.identity_coords


def test_type_a_inverse_closed_form(a31):
    law = _oracle(a31)
    for a, b in tuples("A", 8):
        inv = (a, b ^ fmul(a, frob(a, 1, 0b1011), 0b1011))
        assert law((a, b), inv) == (0, 0)
        assert a31.inverse((a, b)) == inv


@pytest.mark.parametrize("spec", ORDER_64 + ORDER_512)
def test_squares_are_central(spec):
    P = group(spec)
    sq = P.mul(P.all, P.all)
    assert np.all(center(P).mask[sq])


def test_type_a_square_formula(a31):
    F = a31.field
    for a, b in tuples("A", 8):
        assert a31.multiply((a, b), (a, b)) == (0, F.mul(a, F.frobenius(1, a)))


def test_involutions(a31, b20):
    inv = [a31.unpack(int(a31.keys[i])) for i in a31.involutions()]
    assert len(inv) == 7 and all(a == 0 for a, _ in inv)
    inv = [b20.unpack(int(b20.keys[i])) for i in b20.involutions()]
    assert len(inv) == 3 and all(a == 0 and b == 0 for a, b, _ in inv)
    assert a31.identity not in a31.involutions()


def test_b21_has_three_central_involutions(b21):
    inv = [b21.unpack(int(b21.keys[i])) for i in b21.involutions()]
    assert len(inv) == 3 and all(a == 0 and b == 0 for a, b, _ in inv)


def test_epsilon_predicates():
    eps = find_epsilons("B", 2, 1)
    assert eps
    F = resolve_params("B", 2, 1).field
    rho = 0b10
    bad = F.inv(rho) ^ F.frobenius(1, rho)
    assert not epsilon_valid(SuzukiParams("B", 2, 1, bad))
    assert find_epsilons("C", 3, 1)
    assert find_epsilons("D", 5, 1)
    with pytest.raises(ParameterError):
        find_epsilons("C", 4, 1)
    with pytest.raises(UsageError):
        epsilon_valid(SuzukiParams("A", 3, 1))


def test_epsilon_scan_matches_direct_enumeration():
    for fam, m, l in [("B", 2, 1), ("B", 3, 1), ("C", 3, 1), ("D", 5, 1), ("D", 5, 2)]:
        F = resolve_params(fam, m, l, find_epsilons(fam, m, l)[0]).field
        hit = set()
        for r in range(1, F.q):
            ri, th = F.inv(r), lambda x, k=1: F.frobenius(l * k, x)
            if fam == "B":
                hit.add(ri ^ th(r))
            elif fam == "C":
                hit.add(ri ^ F.mul(r, th(F.mul(r, r))))
            else:
                hit.add(ri ^ F.mul(F.mul(r, th(r, 4)), th(r)))
        assert find_epsilons(fam, m, l) == sorted(set(range(F.q)) - hit)


def test_tau_images(a31, a62):
    assert {len(a31.tau_alpha_image(a)) for a in range(1, 8)} == {4}
    assert {len(a62.tau_alpha_image(a)) for a in range(1, 64)} == {16}
    for a1 in range(1, 8):
        for a2 in range(a1 + 1, 8):
            span = {x ^ y for x in a31.tau_alpha_image(a1) for y in a31.tau_alpha_image(a2)}
            assert span == set(range(8))
    with pytest.raises(DomainError):
        a31.tau_alpha_image(0)


def test_spec_parsing():
    assert parse_suzuki_spec("A(m=3,l=1)").spec() == "A(m=3,l=1)"
    p = parse_suzuki_spec("C(m=3,eps=auto)")
    assert p.l == 1 and p.epsilon == find_epsilons("C", 3)[0]
    assert parse_suzuki_spec("B(m=2,l=1,eps=auto)").epsilon == find_epsilons("B", 2, 1)[0]
    for bad in ["A(m=3)", "A(m=3,l=1,eps=0x1)", "E(m=3,l=1)", "A(m=x,l=1)", "A(m=3,l=1,m=3)"]:
        with pytest.raises(SpecParseError):
            parse_suzuki_spec(bad)
    for bad in ["A(m=3,l=0)", "C(m=4)", "D(m=4,l=1,eps=auto)", "D(m=5,l=0,eps=auto)"]:
        with pytest.raises(ParameterError):
            parse_suzuki_spec(bad)


def test_even_order_theta_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        resolve_params("A", 4, 1)
    assert any(issubclass(x.category, EvenOrderThetaWarning) for x in w)


@pytest.mark.parametrize("spec", ORDER_64 + ORDER_512 + ["A(m=5,l=2)", "A(m=6,l=2)", "C(m=5,eps=auto)",
                                                         "D(m=5,l=2,eps=0x6)"])
def test_orders(spec):
    P = group(spec)
    q = P.q
    assert P.order == (q * q if P.family == "A" else q ** 3)
    assert center(P).order == q
    assert center(P) == P.expected_center


@given(st.sampled_from(["A(m=5,l=1)", "B(m=3,l=1,eps=auto)", "C(m=3,eps=auto)"]), st.data())
def test_key_packing_roundtrip(spec, data):
    P = group(spec)
    i = data.draw(st.integers(0, P.order - 1))
    coords = P.unpack(int(P.keys[i]))
    assert P.element(*coords) == i
    assert P.format_key(int(P.keys[i])).startswith("(")
