import json
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from heisenfield import ContextMismatch, HGroup, SizeBoundError, commutator, delta, field_make, h
from heisenfield import is_central, theta
from heisenfield.heisenberg import h_identity, h_inv, rank_triple, unrank_triple

from oracles import coords, heis_comm, heis_mul, mat, mat_mul


def test_spec_products(gf):
    f = gf(5)
    assert h(f, 1, 0, 0) * h(f, 0, 1, 0) == h(f, 1, 1, 1)
    assert h(f, 0, 1, 0) * h(f, 1, 0, 0) == h(f, 1, 1, 0)


def test_identity_law_gf3(gf):
    g = HGroup(gf(3))
    e = g.identity
    assert all(x * e == x and e * x == x for x in g.elements)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_law_matches_matrices(gf, p):
    f = gf(p)
    for s, t in product(product(range(p), repeat=3), repeat=2):
        assert tuple(int(v.value) for v in h(f, *s) * h(f, *t)) == heis_mul(s, t, p)


def test_law_matches_matrices_gf4(gf4):
    # over GF(4) compare against the field-valued matrix product
    g = HGroup(gf4)
    from heisenfield.heisenberg import matrix
    for x, y in product(g.elements[::5], g.elements[::3]):
        a, b = matrix(x), matrix(y)
        m = [[sum((a[i][k] * b[k][j] for k in range(3)), gf4.zero) for j in range(3)]
             for i in range(3)]
        assert matrix(x * y) == m


def test_commutator_examples(gf):
    f = gf(5)
    assert commutator(h(f, 1, 0, 0), h(f, 0, 1, 0)) == h(f, 0, 0, 1)
    assert commutator(h(f, 2, 0, 0), h(f, 0, 3, 0)) == h(f, 0, 0, 1)
    m = mat(2, 0, 0, 5), mat(0, 3, 0, 5)
    assert heis_comm((2, 0, 0), (0, 3, 0), 5) == (0, 0, 1)
    assert coords(mat_mul(*m, 5)) == (2, 3, 6 % 5)
    x = h(f, 3, 4, 1)
    assert commutator(x, x) == h_identity(f)


def test_delta_examples(gf):
    f = gf(5)
    assert delta(h(f, 1, 0, 0), h(f, 0, 1, 0)) == 1
    u = h(f, 3, 2, 4)
    assert delta(u, u) == 0
    assert delta(h(f, 1, 2, 0), h(f, 2, 4, 7)) == 0


def test_center_examples(gf):
    f = gf(5)
    assert is_central(h(f, 0, 0, 4))
    assert not is_central(h(f, 1, 0, 0))
    g = HGroup(gf(3))
    center = [x for x in g.elements if all(x * y == y * x for y in g.elements)]
    assert len(center) == 3
    assert center == [x for x in g.elements if is_central(x)] == g.center()


@pytest.mark.parametrize("p", [2, 3])
def test_commutator_formula_exhaustive(gf, p):
    g = HGroup(gf(p))
    for x, y in product(g.elements, repeat=2):
        c = commutator(x, y)
        assert c == h(gf(p), 0, 0, delta(x, y))
        assert tuple(int(v.value) for v in c) == heis_comm(tuple(int(v.value) for v in x),
                                                           tuple(int(v.value) for v in y), p)
        assert (delta(x, y) == 0) == (x * y == y * x)


@pytest.mark.parametrize("p", [2, 3])
def test_centrality_from_one_pair(gf, p):
    g = HGroup(gf(p))
    els = g.elements
    pairs = [(u, v) for u, v in product(els, repeat=2) if delta(u, v) != 0]
    for u, v in pairs[:: max(1, len(pairs) // 40)]:
        for x in els:
            assert is_central(x) == (commutator(x, u) == g.identity == commutator(x, v))


def test_group_axioms_gf2(gf):
    g = HGroup(gf(2))
    els = g.elements
    e = g.identity
    for x, y, z in product(els, repeat=3):
        assert (x * y) * z == x * (y * z)
    for x in els:
        assert x * h_inv(x) == e == h_inv(x) * x


def test_center_is_additive(gf):
    f = gf(7)
    for a, b in product(range(7), repeat=2):
        assert h(f, 0, 0, a) * h(f, 0, 0, b) == h(f, 0, 0, a + b)


def test_inverse_formula(gf):
    f = gf(5)
    x = h(f, 2, 3, 4)
    assert h_inv(x) == h(f, -2, -3, 2 * 3 - 4)


def test_theta_orders(gf):
    assert theta(gf(2)).order == 8
    assert theta(gf(3)).order == 27
    g = theta(gf(2))
    assert any(x * y != y * x for x, y in product(g.elements, repeat=2))
    q = theta(field_make("rationals"))
    assert q.order is None and not q.is_finite
    with pytest.raises(TypeError):
        q.elements


def test_size_bound(gf):
    with pytest.raises(SizeBoundError):
        HGroup(gf(11))
    assert HGroup(gf(11), max_order=2000).order == 1331


def test_context_mismatch(gf):
    with pytest.raises(ContextMismatch):
        h(gf(3), 1, 0, 0) * h(gf(5), 1, 0, 0)


def test_lexicographic_order(gf):
    g = HGroup(gf(3))
    assert [tuple(int(v.value) for v in x) for x in g.elements] == list(product(range(3), repeat=3))
    assert all(g.index(x) == i for i, x in enumerate(g.elements))


def test_mul_table_matches_law(gf4):
    for ctx in (gf4, field_make("prime", 3)):
        g = HGroup(ctx)
        t = g.mul_table()
        els = g.elements
        for i, j in product(range(g.order), repeat=2):
            if (i + j) % 7 == 0:
                assert els[t[i, j]] == els[i] * els[j]


def test_json_export(gf):
    g = HGroup(gf(2))
    data = json.loads(g.dumps())
    assert data["order"] == 8
    assert len(data["mul"]) == 64
    assert data["elements"][0] == [0, 0, 0]
    t = np.array(data["mul"]).reshape(8, 8)
    assert (t[0] == np.arange(8)).all()


def test_rank_unrank():
    seen = [unrank_triple(n) for n in range(1000)]
    assert len(set(seen)) == 1000
    assert all(rank_triple(*t) == n for n, t in enumerate(seen))
    assert [max(t) for t in seen] == sorted(max(t) for t in seen)


@given(st.fractions(max_denominator=20), st.fractions(max_denominator=20),
       st.fractions(max_denominator=20), st.fractions(max_denominator=20))
def test_rational_commutator(a, b, c, d):
    q = field_make("rationals")
    x, y = h(q, a, b, 0), h(q, c, d, Fraction(1, 3))
    assert commutator(x, y) == h(q, 0, 0, a * d - b * c)


@given(st.integers(0, 342), st.integers(0, 342), st.integers(0, 342))
def test_gf7_sampled_associativity(i, j, k):
    g = HGroup(field_make("prime", 7))
    x, y, z = g.element(i), g.element(j), g.element(k)
    assert (x * y) * z == x * (y * z)
    assert commutator(x, y) == h(g.ctx, 0, 0, delta(x, y))
