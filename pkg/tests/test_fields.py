from fractions import Fraction
from itertools import islice, product

import pytest
from hypothesis import given, strategies as st

from heisenfield import ContextMismatch, FieldError, SizeBoundError, field_make, parse_field_spec
from heisenfield.fields import check_field_axioms, is_irreducible, stern_brocot

from oracles import has_root, poly_mulmod

SMALL = [("prime", 2), ("prime", 3), ("prime", 5), ("prime", 7),
         ("ext", 2, 2, "x^2+x+1"), ("ext", 3, 2, "x^2+1"), ("ext", 2, 3, "x^3+x+1")]


def make(spec):
    if spec[0] == "prime":
        return field_make("prime", spec[1])
    return field_make("ext", spec[1], spec[2], spec[3])


def test_prime_field_sizes():
    assert field_make("prime", 5).order == 5
    assert len(list(field_make("prime", 5).elements())) == 5


@pytest.mark.parametrize("p", [4, 6, 9, 1, 0])
def test_non_prime_rejected(p):
    with pytest.raises(FieldError):
        field_make("prime", p)


def test_gf4():
    f = field_make("ext", 2, 2, "x^2+x+1")
    assert f.order == 4
    assert not has_root([1, 1, 1], 2)
    g = f.gen
    assert g * g == g + 1


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        field_make("ext", 2, 2, "x^2+1")
    with pytest.raises(FieldError):
        field_make("ext", 3, 2, "x^2+2")


def test_size_bound():
    with pytest.raises(SizeBoundError):
        field_make("ext", 2, 7, "x^7+x+1")


def test_irreducibility_against_root_test():
    # for degrees 2 and 3 irreducible means no root
    for p in (2, 3):
        for coeffs in product(range(p), repeat=3):
            poly = list(coeffs) + [1]
            assert is_irreducible(poly, p) == (not has_root(poly, p))


def test_small_arithmetic():
    f = field_make("prime", 5)
    assert f(2) * f(3) == f(1)
    q = field_make("rationals")
    assert q(Fraction(1, 2)) + q(Fraction(1, 3)) == q(Fraction(5, 6))


def test_division_by_zero():
    f = field_make("prime", 7)
    with pytest.raises(ZeroDivisionError):
        f(3) / f(0)
    with pytest.raises(ZeroDivisionError):
        field_make("rationals").zero.inverse()


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        field_make("prime", 5)(1) + field_make("prime", 7)(1)


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_field_axioms_exhaustive(spec):
    f = make(spec)
    els = list(f.elements())
    limit = None if f.order <= 9 else 5
    bad = check_field_axioms(els, lambda a, b: a + b, lambda a, b: a * b, f.zero, f.one, limit)
    assert bad == []


@pytest.mark.parametrize("spec", [s for s in SMALL if s[0] == "ext"], ids=str)
def test_extension_multiplication_matches_schoolbook(spec):
    f = make(spec)
    for a, b in product(f.elements(), repeat=2):
        assert (a * b).value == poly_mulmod(a.value, b.value, f.modulus, f.p)


@pytest.mark.parametrize("spec", SMALL, ids=str)
def test_enumeration_is_a_bijection(spec):
    f = make(spec)
    els = list(f.elements())
    assert len(set(els)) == f.order
    assert [x.index for x in els] == list(range(f.order))


def test_canonical_forms():
    f = field_make("prime", 5)
    assert f(-1).value == 4 and f(12).value == 2
    q = field_make("rationals")
    x = q(Fraction(-6, 4))
    assert (x.value.numerator, x.value.denominator) == (-3, 2)
    assert q(q(Fraction(2, 4))) == q(Fraction(1, 2))
    g = field_make("ext", 2, 2, "x^2+x+1")
    assert g((1, 1, 1)).value == (0, 0)     # x^2+x+1 reduces to 0


def test_rational_enumeration():
    q = field_make("rationals")
    first = list(islice(q.elements(), 16))
    assert len(set(first)) == 16
    for want in (0, 1, -1, Fraction(1, 2)):
        assert q(want) in first
    assert [q.index(x) for x in first] == list(range(16))


def test_stern_brocot_reaches_positive_rationals():
    seen = {stern_brocot(n) for n in range(1, 200)}
    assert {Fraction(1), Fraction(1, 2), Fraction(2), Fraction(3, 2), Fraction(2, 3)} <= seen
    assert all(x > 0 for x in seen)


@pytest.mark.parametrize("text, order", [("gf:3", 3), ("gf:4:x^2+x+1", 4), ("q", None),
                                         ("gf:9:x^2+1", 9)])
def test_parse_field_spec(text, order):
    assert parse_field_spec(text).order == order


@pytest.mark.parametrize("text", ["gf:6", "gf:4", "gf:x", "hello", "gf:8:x^3+1"])
def test_parse_field_spec_errors(text):
    with pytest.raises(FieldError):
        parse_field_spec(text)


fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10 ** 6)


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    q = field_make("rationals")
    x, y, z = q(a), q(b), q(c)
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == q.zero
    if b != 0:
        assert (x / y) * y == x
    assert x == q(a)


@given(fractions)
def test_rational_index_roundtrip(a):
    q = field_make("rationals")
    assert q.element(q.index(q(a))) == q(a)


@given(st.integers(0, 48), st.integers(0, 48), st.integers(0, 48))
def test_gf49_sampled_axioms(i, j, k):
    f = field_make("ext", 7, 2, "x^2+1")
    a, b, c = f.element(i), f.element(j), f.element(k)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b:
        assert (a / b) * b == a
