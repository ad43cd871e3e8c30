import itertools

import pytest
from hypothesis import given, strategies as st

from ffcount.field import (
    FieldElement,
    FieldSizeError,
    PolySpec,
    dickson_eval,
    dickson_table,
    dickson_values,
    element_pow,
    field_from_order,
    frobenius_inverse,
    gcd_family_size,
    image_set,
    is_irreducible,
    make_field,
)

from oracles import IMAGE_T2_GF5, IMAGE_T3_MINUS_T2_GF3, NaiveField, to_coeffs

PRIME_POWERS_TO_49 = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49]


def _has_factor(f, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    s = len(f) - 1
    for d in range(1, s // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            rem = list(f)
            for deg in range(len(rem) - 1, d - 1, -1):
                c = rem[deg]
                if c:
                    for i in range(d + 1):
                        rem[deg - d + i] = (rem[deg - d + i] - c * g[i]) % p
            if not any(rem[:d]):
                return True
    return False


def test_prime_field_modulus_is_T():
    f = make_field(5, 1)
    assert f.q == 5 and f.modulus == (0, 1)


def test_enumeration_sizes():
    assert len(make_field(3, 2).elements()) == 9
    assert len({e.index for e in make_field(3, 2).elements()}) == 9


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_smallest_irreducible(p, s):
    f = make_field(p, s)
    assert not _has_factor(list(f.modulus), p)
    assert is_irreducible(f.modulus, p)
    # every monic polynomial of smaller index is reducible
    target = sum(c * p**i for i, c in enumerate(f.modulus[:s]))
    for idx in range(target):
        cand = to_coeffs(idx, p, s) + [1]
        assert _has_factor(cand, p)


def test_gf16_frobenius_fixed_points():
    f = make_field(2, 4)
    for x in f.elements():
        assert x**16 == x


@pytest.mark.parametrize("q", [q for q in PRIME_POWERS_TO_49 if q <= 49])
def test_tables_match_naive_model(q):
    f = field_from_order(q)
    nf = NaiveField(f.p, f.s, f.modulus)
    for a in range(q):
        for b in range(q):
            assert f.add(a, b) == nf.add(a, b)
            assert f.mul(a, b) == nf.mul(a, b)


@pytest.mark.parametrize("q", PRIME_POWERS_TO_49)
def test_field_axioms_exhaustive(q):
    f = field_from_order(q)
    r = range(q)
    for a in r:
        assert f.add(a, f.neg(a)) == 0
        if a:
            assert f.mul(a, f.inv(a)) == 1
        assert f.pow(a, q) == a
    if q <= 16:
        for a, b, c in itertools.product(r, repeat=3):
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))


@pytest.mark.parametrize("q", PRIME_POWERS_TO_49)
def test_multiplicative_group(q):
    f = field_from_order(q)
    g = f.primitive_element
    seen = set()
    x = 1
    for _ in range(q - 1):
        seen.add(x)
        x = f.mul(x, g)
    assert x == 1 and len(seen) == q - 1
    for a in range(1, q):
        assert f.pow(a, q - 1) == 1


def test_element_pow_examples():
    f = make_field(5)
    assert element_pow(f(2), 3).index == 3
    assert element_pow(f(2), 4).index == 1
    assert element_pow(f(0), 0).index == 1
    for x in f.elements():
        assert element_pow(x, 1) == x


@pytest.mark.parametrize("q", [4, 8, 9, 16, 25, 27, 32, 49, 64, 81])
def test_frobenius_inverse_two_sided(q):
    f = field_from_order(q)
    for r in range(f.s):
        for x in f.elements():
            y = frobenius_inverse(x, r)
            assert element_pow(y, f.p**r) == x
            assert frobenius_inverse(element_pow(x, f.p**r), r) == x


def test_frobenius_inverse_examples():
    f5 = make_field(5)
    assert all(frobenius_inverse(x, 0) == x for x in f5.elements())
    f9 = make_field(3, 2)
    for x in f9.elements():
        y = frobenius_inverse(x, 1)
        assert y == x**3 and y**3 == x
    f4 = make_field(2, 2)
    assert frobenius_inverse(f4(1), 1) == f4(1)
    with pytest.raises(ValueError):
        frobenius_inverse(f4(1), 2)


def test_image_set_examples():
    f5 = make_field(5)
    img = image_set(PolySpec.monomial(2), f5)
    assert [e.index for e in img] == [0, 1, 4]
    assert len(img) == IMAGE_T2_GF5 == gcd_family_size(2, 5)
    assert len(image_set(PolySpec.monomial(1), make_field(7))) == 7
    f3 = make_field(3)
    g = PolySpec.from_terms({3: 1, 2: f3.neg(1)})
    assert len(image_set(g, f3)) == IMAGE_T3_MINUS_T2_GF3


def test_poly_shape_check():
    PolySpec.from_terms({4: 1, 2: 1}).check_no_low_terms()
    with pytest.raises(ValueError):
        PolySpec.from_terms({2: 1, 1: 1}).check_no_low_terms()


def test_dickson_examples():
    f = make_field(7)
    for a in range(7):
        for x in range(7):
            assert dickson_eval(0, f(a), f(x)).index == 2
            assert dickson_eval(2, f(a), f(x)).index == f.sub(f.mul(x, x), f.scale(2, a))


def test_dickson_table_matches_single_evaluation():
    f = make_field(2, 3)
    for a in range(8):
        table = dict(dickson_table(12, a, f))
        for n in range(13):
            assert table[n] == dickson_values(n, a, f)


def test_dickson_gf8_value_set():
    from fractions import Fraction
    from math import gcd

    f = make_field(2, 3)
    q = 8
    for n in range(2, 20, 2):
        want = Fraction(q - 1, 2 * gcd(n, q - 1)) + Fraction(q + 1, 2 * gcd(n, q + 1))
        for a in range(1, q):
            assert len(set(dickson_values(n, a, f))) == want


def test_errors():
    with pytest.raises(ValueError):
        make_field(4)
    with pytest.raises(FieldSizeError):
        make_field(2, 17)
    with pytest.raises(ValueError):
        field_from_order(12)
    f = make_field(5)
    with pytest.raises(ZeroDivisionError):
        f(0).inverse()


def test_elements_from_different_fields():
    with pytest.raises(ValueError):
        make_field(5)(1) + make_field(7)(1)


fields = st.sampled_from([2, 3, 4, 5, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 128]).map(field_from_order)


@given(fields, st.data())
def test_ring_laws(f, data):
    el = st.integers(0, f.q - 1)
    a, b, c = (FieldElement(f, data.draw(el)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a
    if b:
        assert (a / b) * b == a
    e1, e2 = data.draw(st.integers(0, 300)), data.draw(st.integers(0, 300))
    assert element_pow(a, e1) * element_pow(a, e2) == element_pow(a, e1 + e2)


def test_coefficient_round_trip():
    f = make_field(3, 3)
    for x in range(f.q):
        assert f.from_coeffs(f.coeffs(x)) == x
