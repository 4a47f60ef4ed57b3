import cmath
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asdforge.exactnum import (
    INF,
    CycloElem,
    InputError,
    cyclo_conj,
    cyclo_embed,
    cyclo_from_json,
    cyclo_inv,
    cyclo_mul,
    cyclo_to_json,
    cyclotomic_polynomial,
    degree,
    rat_from_str,
    rat_to_str,
    root_of_unity,
    vp,
)
from strategies import cyclo_elems, nonzero_rats, orders, small_rats


def to_complex(a: CycloElem) -> complex:
    z = cmath.exp(2j * cmath.pi / a.order)
    return sum(float(c) * z ** i for i, c in enumerate(a.coeffs))


def numeric_cyclotomic(L):
    roots = [cmath.exp(2j * cmath.pi * j / L) for j in range(1, L + 1) if gcd(j, L) == 1]
    return [round(c.real) for c in np.poly(roots)[::-1]]


@pytest.mark.parametrize("L,expected", [(1, [-1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1])])
def test_cyclotomic_polynomial_examples(L, expected):
    assert list(cyclotomic_polynomial(L)) == expected


@pytest.mark.parametrize("L", range(1, 31))
def test_cyclotomic_polynomial_matches_product_over_primitive_roots(L):
    assert list(cyclotomic_polynomial(L)) == numeric_cyclotomic(L)


def test_cyclotomic_degree_sum():
    for L in range(1, 61):
        total = sum(len(cyclotomic_polynomial(d)) - 1 for d in range(1, L + 1) if L % d == 0)
        assert total == L


def test_cyclotomic_polynomial_rejects_zero():
    with pytest.raises(InputError):
        cyclotomic_polynomial(0)


def test_mul_examples():
    i = root_of_unity(4, 1)
    assert i * i == CycloElem.from_rational(-1, 4)
    z = root_of_unity(3, 1)
    assert cyclo_mul(z, z) == CycloElem(3, [-1, -1])
    a = CycloElem(5, [1, 2, 3, 4])
    assert a * CycloElem.one(5) == a


def test_mul_order_mismatch():
    with pytest.raises(InputError):
        cyclo_mul(root_of_unity(3, 1), root_of_unity(4, 1))


def test_inv_examples():
    assert cyclo_inv(root_of_unity(4, 1)) == -root_of_unity(4, 1)
    assert cyclo_inv(CycloElem.one(7)) == CycloElem.one(7)
    assert cyclo_inv(CycloElem.from_rational(2)) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        cyclo_inv(CycloElem.zero(5))


def test_conj_examples():
    assert cyclo_conj(root_of_unity(4, 1)) == -root_of_unity(4, 1)
    assert cyclo_conj(CycloElem.from_rational(Fraction(3, 7), 9)) == Fraction(3, 7)


def test_embed_examples():
    assert cyclo_embed(root_of_unity(2, 1), 4) == CycloElem.from_rational(-1, 4)
    a = CycloElem(5, [1, 0, 2, 0])
    assert cyclo_embed(a, 5) == a
    assert cyclo_embed(root_of_unity(3, 1), 6) == root_of_unity(6, 2)
    with pytest.raises(InputError):
        cyclo_embed(root_of_unity(3, 1), 4)


def test_root_of_unity_examples():
    assert root_of_unity(1, 5) == 1
    assert root_of_unity(4, 2) == -1
    assert root_of_unity(5, 7) == root_of_unity(5, 2)
    assert root_of_unity(5, 2).coeffs == (0, 0, 1, 0)


@pytest.mark.parametrize("L", [1, 2, 3, 4, 6, 9, 10, 12, 15, 16, 30])
def test_root_of_unity_is_primitive(L):
    z = root_of_unity(L, 1)
    assert z ** L == 1
    for d in range(1, L):
        assert z ** d != 1


def test_vp_examples():
    assert vp(8, 2) == 3
    assert vp(Fraction(3, 4), 2) == -2
    assert vp(0, 5) == INF
    assert INF > 10 ** 100
    with pytest.raises(InputError):
        vp(12, 4)


@given(nonzero_rats, nonzero_rats, st.sampled_from([2, 3, 5, 7]))
def test_vp_is_a_valuation(x, y, p):
    assert vp(x * y, p) == vp(x, p) + vp(y, p)
    assert vp(x + y, p) >= min(vp(x, p), vp(y, p))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mul_commutative_associative_and_inverse(data):
    L = data.draw(orders)
    a, b, c = (data.draw(cyclo_elems(L)) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        inv = cyclo_inv(a)
        assert a * inv == 1 and inv * a == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mul_matches_complex_embedding(data):
    L = data.draw(orders)
    a, b = data.draw(cyclo_elems(L)), data.draw(cyclo_elems(L))
    assert abs(to_complex(a * b) - to_complex(a) * to_complex(b)) < 1e-6 * (1 + abs(to_complex(a)) * abs(to_complex(b)))
    assert abs(to_complex(cyclo_conj(a)) - to_complex(a).conjugate()) < 1e-8 * (1 + abs(to_complex(a)))


@settings(max_examples=40, deadline=None)
@given(st.data(), st.sampled_from([(3, 12), (4, 12), (5, 15), (4, 8), (1, 7), (6, 18)]))
def test_embed_is_ring_homomorphism(data, orders_pair):
    L, M = orders_pair
    a, b = data.draw(cyclo_elems(L)), data.draw(cyclo_elems(L))
    assert cyclo_embed(a * b, M) == cyclo_embed(a, M) * cyclo_embed(b, M)
    assert cyclo_embed(a + b, M) == cyclo_embed(a, M) + cyclo_embed(b, M)


@given(cyclo_elems())
def test_conj_is_involution(a):
    assert cyclo_conj(cyclo_conj(a)) == a


@given(cyclo_elems())
def test_cyclo_json_round_trip(a):
    assert cyclo_from_json(cyclo_to_json(a)) == a


@given(small_rats)
def test_rat_string_round_trip(x):
    assert rat_from_str(rat_to_str(x)) == x


@pytest.mark.parametrize("bad", ["1.5", "1/0", "", "a/b", " 3", "3/-4", "+2"])
def test_rat_from_str_rejects(bad):
    with pytest.raises(InputError):
        rat_from_str(bad)


def test_degree_is_totient():
    assert [degree(L) for L in (1, 2, 3, 4, 5, 6, 12)] == [1, 1, 2, 2, 4, 2, 4]
