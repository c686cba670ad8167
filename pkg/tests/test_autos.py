import numpy as np
import pytest

from heisenfield import SizeBoundError, enumerate_autos, fixed_tuples, quotient, rigidity_report
from heisenfield import swap_map, invariance_violations
from heisenfield.autos import (Automorphism, element_orders, generating_set, is_automorphism,
                               _closure)
from heisenfield.bbox import from_table

from oracles import brute_force_automorphisms, cyclic_table, quaternion_table


@pytest.fixture(scope="module")
def autos3(host):
    return enumerate_autos(host(3))


def test_gf2_has_eight(host):
    autos = enumerate_autos(host(2))
    assert len(autos) == 8
    assert sorted(a.perm for a in autos) == sorted(brute_force_automorphisms(host(2).table))


def test_q8_and_z4_against_brute_force():
    q8 = from_table(quaternion_table())
    assert len(enumerate_autos(q8)) == len(brute_force_automorphisms(quaternion_table())) == 24
    z4 = from_table(cyclic_table(4))
    assert len(enumerate_autos(z4)) == 2


def test_identity_present(host, autos3):
    for autos in (enumerate_autos(host(2)), autos3):
        assert any(a.is_identity for a in autos)


def test_gf3_count_and_validity(autos3):
    # Aut(H(GF(3))) acts simply transitively on the 432 non-commuting pairs
    assert len(autos3) == 432
    assert all(a.violations() == [] for a in autos3)
    assert len({a.perm for a in autos3}) == 432


def test_group_under_composition(autos3):
    perms = {a.perm for a in autos3}
    rng = np.random.default_rng(0)
    for i, j in rng.integers(0, len(autos3), size=(200, 2)):
        assert autos3[i].compose(autos3[j]).perm in perms
    for a in autos3[::17]:
        assert a.inverse().perm in perms
        assert a.compose(a.inverse()).is_identity


def test_swap_found_gf3(host, autos3):
    g = host(3)
    s = swap_map(g)
    assert is_automorphism(g, s)
    assert s in {a.perm for a in autos3}
    for x in g.elements():
        lab = g.label(x)
        assert g.label(s[x]) == type(lab)(lab.b, lab.a, lab.a * lab.b - lab.c)


def test_fixed_tuples_gf3(host, autos3):
    g = host(3)
    assert fixed_tuples(g, autos3, 1) == {(g.identity,)}
    assert fixed_tuples(g, autos3, 2) == {(g.identity, g.identity)}


def test_fixed_tuples_gf2(host):
    # in characteristic 2 the central involution h(0,0,1) is fixed by every automorphism
    g = host(2)
    autos = enumerate_autos(g)
    z = [int(x) for x in g.center if x != g.identity]
    assert fixed_tuples(g, autos, 1) == {(g.identity,), (z[0],)}
    assert len(fixed_tuples(g, autos, 2)) == 4
    brute = {(x,) for x in range(8) if all(p[x] == x for p in brute_force_automorphisms(g.table))}
    assert fixed_tuples(g, autos, 1) == brute


def test_fixed_tuples_bound(host, autos3):
    with pytest.raises(SizeBoundError):
        fixed_tuples(host(3), [Automorphism(host(3), tuple(range(27)))], 5)


def test_rigidity_reports(host, autos3):
    rep = rigidity_report(host(3), autos3)
    assert rep["automorphisms"] == 432 and rep["swap_found"] and rep["only_identity_fixed"]
    assert rep["fixed_tuples"] == {1: 1, 2: 1, 3: 1}
    assert "do not check every parameter-free definition" in rep["limitation"]
    rep2 = rigidity_report(host(2))
    assert rep2["automorphisms"] == 8
    assert rep2["fixed_tuples"][1] == 2 and not rep2["only_identity_fixed"]
    z4 = rigidity_report(from_table(cyclic_table(4)))
    assert z4["automorphisms"] == 2 and z4["abelian"]
    assert "swap_found" not in z4


@pytest.mark.parametrize("p", [2, 3])
def test_invariance(host, p):
    g = host(p)
    autos = enumerate_autos(g)
    assert invariance_violations(g, autos[:: max(1, len(autos) // 40)], quotient(g)) == []


def test_invariance_detects_non_automorphism(host):
    g = host(3)
    # a bijection that preserves the domain but scrambles the classes
    perm = list(range(27))
    c = [int(x) for x in g.center]
    perm[c[1]], perm[c[2]] = perm[c[2]], perm[c[1]]
    bad = invariance_violations(g, [Automorphism(g, tuple(perm))])
    assert bad


def test_size_bound(host):
    with pytest.raises(SizeBoundError):
        enumerate_autos(host(3), max_order=20)


def test_generating_set_generates(host):
    for p in (2, 3):
        g = host(p)
        gens = generating_set(g)
        assert _closure(g, gens).all()
        # greedy, so not always minimal, but never a single (cyclic) generator
        assert 2 <= len(gens) <= 3


def test_element_orders(host):
    g = host(3)
    orders = element_orders(g)
    assert orders[g.identity] == 1
    assert sorted(set(orders.tolist())) == [1, 3]
    assert sorted(set(element_orders(host(2)).tolist())) == [1, 2, 4]


def test_not_a_table_group():
    from heisenfield import HGroup, field_make, wrap
    with pytest.raises(TypeError):
        enumerate_autos(wrap(HGroup(field_make("rationals"))))
