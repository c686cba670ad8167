from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from heisenfield import (HGroup, InterpretationError, biinterp_k, domain_d, field_make, h,
                         heisenberg_in_field, not_odot, not_oplus, not_sim, odot, oplus,
                         quotient, relabel, sim, wrap)
from heisenfield.bbox import first_noncommuting_pair, from_table, noncommuting_pairs
from heisenfield.interp import TransferTensor, equivalence_violations, interpretation

from oracles import cyclic_table, direct_product, quaternion_table


def pos(g, *coords):
    return g.source.index(h(g.source.ctx, *coords))


@pytest.mark.parametrize("p", [2, 3])
def test_domain_size(host, p):
    d = domain_d(host(p))
    assert len(d) == (p * p - 1) * (p * p - p) * p * p * p
    assert len(set(d)) == len(d)


def test_domain_counts_by_enumeration(host):
    g = host(2)
    brute = [(u, v, x) for u, v, x in product(range(8), repeat=3)
             if g.mul(u, v) != g.mul(v, u) and g.mul(x, u) == g.mul(u, x)
             and g.mul(x, v) == g.mul(v, x)]
    assert sorted(brute) == sorted(tuple(t) for t in domain_d(g))
    assert len(brute) == 48


def test_non_central_excluded(host):
    g = host(3)
    it = interpretation(g)
    u, v = first_noncommuting_pair(g)
    assert not it.in_domain((u, v, pos(g, 1, 0, 0)))
    with pytest.raises(InterpretationError):
        sim(g, (u, v, pos(g, 1, 0, 0)), (u, v, g.identity))


def test_sim_examples(host):
    g = host(5)
    u, v, u2 = pos(g, 1, 0, 0), pos(g, 0, 1, 0), pos(g, 2, 0, 0)
    t1 = (u, v, pos(g, 0, 0, 3))
    assert sim(g, t1, t1)
    assert sim(g, t1, (u2, v, pos(g, 0, 0, 1)))
    assert not sim(g, t1, (u, v, pos(g, 0, 0, 4)))
    assert not not_sim(g, t1, t1)
    assert not_sim(g, t1, (u2, v, pos(g, 0, 0, 2)))


def test_not_sim_complement_gf2(host):
    g = host(2)
    d = domain_d(g)
    for t1, t2 in product(d, repeat=2):
        assert not_sim(g, t1, t2) == (not sim(g, t1, t2))


def test_operation_examples(host):
    g = host(5)
    u, v = pos(g, 1, 0, 0), pos(g, 0, 1, 0)
    y = (u, v, pos(g, 0, 0, 3))
    assert oplus(g, (u, v, g.identity), y, y)
    assert odot(g, (u, v, pos(g, 0, 0, 2)), y, (u, v, pos(g, 0, 0, 1)))
    assert not_odot(g, (u, v, pos(g, 0, 0, 2)), y, (u, v, pos(g, 0, 0, 2)))
    # 1 * y = y with y carried across pairs
    u2, v2 = pos(g, 2, 3, 0), pos(g, 1, 1, 4)
    one = (u2, v2, g.comm(u2, v2))
    y2 = (u2, v, g.identity)
    for c in range(5):
        y2 = (pos(g, 3, 0, 0), v, pos(g, 0, 0, c))
        assert odot(g, one, y2, y2)


def test_negations_are_complements_gf2(host):
    g = host(2)
    d = domain_d(g)
    for t1, t2, t3 in product(d[::3], d, d[::2]):
        assert not_oplus(g, t1, t2, t3) == (not oplus(g, t1, t2, t3))
        assert not_odot(g, t1, t2, t3) == (not odot(g, t1, t2, t3))


def test_sim_is_equivalence(host):
    for p in (2, 3):
        tt = TransferTensor(interpretation(host(p)))
        assert equivalence_violations(tt.sim_matrix()) == []


def test_equivalence_checker_catches_bad_relations():
    S = np.eye(3, dtype=bool)
    S[0, 1] = True
    assert {v["law"] for v in equivalence_violations(S)} == {"symmetric"}
    S[1, 0] = S[1, 2] = S[2, 1] = True
    assert {v["law"] for v in equivalence_violations(S)} == {"transitive"}


def test_sim_matrix_matches_pointwise(host):
    g = host(2)
    d = domain_d(g)
    S = TransferTensor(interpretation(g)).sim_matrix()
    for i, j in product(range(len(d)), repeat=2):
        assert S[i, j] == sim(g, d[i], d[j])


@pytest.mark.parametrize("p, classes", [(2, 2), (3, 3), (5, 5)])
def test_quotient(host, gf, p, classes):
    q = quotient(host(p))
    assert q.order == classes
    assert q.axiom_violations() == []
    assert q.isomorphism_from(gf(p)) is not None
    assert sum(q.class_sizes) == q.domain_size
    assert len(set(q.class_sizes)) == 1


def test_quotient_exhaustive_welldefined_gf2(host):
    q = quotient(host(2), exhaustive=True)
    assert q.checks["welldefined"] == "exhaustive"
    assert q.checks["equivalence"] == "exhaustive"


def test_explicit_isomorphism(host, gf):
    # the class of (u0, v0, h(0,0,alpha*delta)) is alpha
    g = host(3)
    f = gf(3)
    q = quotient(g)
    u0, v0 = q.rep_pair
    from heisenfield.heisenberg import delta
    d = delta(g.label(u0), g.label(v0))
    k = {a: q.class_of((u0, v0, g.source.index(h(f, 0, 0, a * d)))) for a in f.elements()}
    for a, b in product(f.elements(), repeat=2):
        assert k[a + b] == q.add(k[a], k[b])
        assert k[a * b] == q.mul(k[a], k[b])


def test_each_class_meets_rep_pair_once(host):
    g = host(3)
    q = quotient(g)
    d = domain_d(g)
    for c in range(q.order):
        members = [t for t in d if q.class_of(t) == c]
        assert sum(1 for t in members if t.pair == q.rep_pair) == 1


@pytest.mark.parametrize("seed", [1, 8])
def test_relabel_invariance(host, gf, seed):
    copy, _ = relabel(host(3), seed)
    q = quotient(copy)
    assert q.order == 3 and q.isomorphism_from(gf(3)) is not None


def test_quotient_report(host, gf):
    rep = quotient(host(2)).report(gf(2))
    assert rep == {"classes": 2, "field_order": 2, "iso_to_input_field": True, "violations": []}


def test_gf4_quotient(gf4):
    q = quotient(wrap(HGroup(gf4)))
    assert q.order == 4 and q.isomorphism_from(gf4) is not None


def test_abelian_host_rejected():
    from heisenfield import AbelianGroupError
    with pytest.raises(AbelianGroupError):
        quotient(from_table(cyclic_table(8)))


def test_host_with_extra_center_rejected(host):
    # H(GF(2)) x Z2^3 has order 64 but its center does not carry a field
    t = direct_product(host(2).table, direct_product(cyclic_table(2),
                                                     direct_product(cyclic_table(2),
                                                                    cyclic_table(2))))
    with pytest.raises(InterpretationError):
        quotient(from_table(t))


def test_quaternion_group_passes_probe():
    # Q8 is not a Heisenberg group, but its center with any non-commuting
    # pair still yields GF(2), so the probe cannot tell it apart
    q = quotient(from_table(quaternion_table()))
    assert q.order == 2 and q.isomorphism_from(field_make("prime", 2)) is not None


@pytest.mark.parametrize("p", [2, 3, 5])
def test_biinterp_finite(p):
    f = field_make("prime", p)
    r = biinterp_k(f)
    assert r.ok, r.violations
    assert r.k[f.zero] == r.quotient.zero
    assert r.k[f.one] == r.quotient.one
    for a, b in product(f.elements(), repeat=2):
        assert r.k[a * b] == r.quotient.mul(r.k[a], r.k[b])


def test_biinterp_k_one_is_unit_class():
    f = field_make("prime", 5)
    r = biinterp_k(f)
    host, q = r.host, r.quotient
    lab = {t: i for i, t in enumerate(host.labels)}
    u, v = lab[(f.one, f.zero, f.zero)], lab[(f.zero, f.one, f.zero)]
    assert host.comm(u, v) == lab[(f.zero, f.zero, f.one)]
    assert q.class_of((u, v, host.comm(u, v))) == r.k[f.one]
    assert q.class_of((u, v, host.identity)) == r.k[f.zero]


def test_biinterp_rationals():
    r = biinterp_k(field_make("rationals"), sample=16)
    assert r.ok, r.violations
    assert r.checked["multiplicative"] == 256


def test_heisenberg_in_field_agrees_with_theta(gf):
    f = gf(3)
    g = heisenberg_in_field(f)
    ref = HGroup(f)
    for i, j in product(range(27), repeat=2):
        s, t = g.labels[i], g.labels[j]
        assert h(f, *g.labels[g.mul(i, j)]) == h(f, *s) * h(f, *t)
    assert g.labels == [tuple(x) for x in ref.elements]


def test_rational_triples():
    q = field_make("rationals")
    g = heisenberg_in_field(q)
    it = interpretation(g)
    u, v = (q.one, q.zero, q.zero), (q.zero, q.one, q.zero)
    u2, v2 = (q(2), q(1), q.zero), (q(1), q(3), q.zero)       # delta = 5
    x = (q.zero, q.zero, q(Fraction(3, 7)))
    y = (q.zero, q.zero, q(Fraction(15, 7)))
    assert it.sim((u, v, x), (u2, v2, y))
    assert it.not_sim((u, v, x), (u2, v2, x))
    assert it.oplus((u, v, x), (u2, v2, y), (u, v, (q.zero, q.zero, q(Fraction(6, 7)))))
    assert not it.in_domain((u, u, x))


def test_domain_needs_finite_host():
    g = heisenberg_in_field(field_make("rationals"))
    with pytest.raises(TypeError):
        interpretation(g).domain()
