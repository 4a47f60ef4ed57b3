import random
from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import divisor_sigma, primerange

from asdforge.characters import char_from_table, trivial_char
from asdforge.exactnum import InputError, root_of_unity
from asdforge.newform import (
    NewformSpec,
    delta_oracle,
    delta_prime_coeffs,
    delta_spec,
    extend_coefficients,
    joint_constant,
    selberg_fit,
)
from asdforge.qseries import QExp


def mul_trunc(a, b, N):
    out = [0] * (N + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(N + 1 - i):
                out[i + j] += x * b[j]
    return out


def eta_quotient(factors, N):
    """q^shift * prod (1 - q^(d n))^r for factors {d: r}, coefficients 0..N."""
    series = [1] + [0] * N
    for d, r in factors.items():
        for _ in range(r):
            for n in range(1, N // d + 1):
                step = d * n
                series = series[:step] + [series[i] - series[i - step] for i in range(step, N + 1)]
    return series


def delta_from_eisenstein(N):
    E4 = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, N + 1)]
    E6 = [1] + [-504 * int(divisor_sigma(n, 5)) for n in range(1, N + 1)]
    num = [x - y for x, y in zip(mul_trunc(mul_trunc(E4, E4, N), E4, N), mul_trunc(E6, E6, N))]
    assert all(c % 1728 == 0 for c in num)
    return [c // 1728 for c in num]


def test_delta_oracle_examples():
    d = delta_oracle(5)
    assert d.to_list() == [1, -24, 252, -1472, 4830]
    assert delta_oracle(1).coeffs == {1: 1}
    assert d.weight == 12 and d.width == 1


def test_delta_oracle_matches_eisenstein_formula():
    N = 300
    assert delta_oracle(N).to_list() == delta_from_eisenstein(N)[1:]


def test_extend_examples(delta):
    b = extend_coefficients(delta_spec(delta_prime_coeffs(delta)), 12)
    assert b[1] == 1
    assert b[4] == (-24) ** 2 - 2 ** 11 == -1472
    assert b[6] == b[2] * b[3]


def test_extend_missing_prime():
    spec = NewformSpec(12, 1, trivial_char(1), {2: -24, 3: 252})
    with pytest.raises(InputError, match=r"b\(5\)"):
        extend_coefficients(spec, 5)


def test_extend_reproduces_delta(delta, delta_b):
    assert delta_b[1:501] == [int(c) for c in delta.to_list(500)]


def test_extend_level_11_weight_2():
    # eta(z)^2 eta(11z)^2 is the newform attached to 11a; 11 divides the level
    N = 400
    e = eta_quotient({1: 2, 11: 2}, N - 1)
    coeffs = [0] + e  # shift by q
    spec = NewformSpec(2, 11, trivial_char(1), {p: coeffs[p] for p in primerange(2, N + 1)})
    assert extend_coefficients(spec, N)[1:] == coeffs[1:N + 1]


def test_extend_weight_3_with_real_character():
    # eta(4z)^6 has weight 3, level 16, character chi_{-4}
    N = 400
    e = eta_quotient({4: 6}, N - 1)
    coeffs = [0] + e
    chi = char_from_table(4, {1: 0, 3: 1}, 2)
    spec = NewformSpec(3, 16, chi, {p: coeffs[p] for p in primerange(2, N + 1)})
    assert extend_coefficients(spec, N)[1:] == coeffs[1:N + 1]
    assert coeffs[9] == 9


def test_newform_spec_validation():
    with pytest.raises(InputError):
        NewformSpec(12, 1, trivial_char(1), {2: Fraction(1, 2)})
    with pytest.raises(InputError):
        NewformSpec(12, 1, trivial_char(1), {4: 1})
    with pytest.raises(InputError):
        NewformSpec(2, 1, trivial_char(1), {2: 5})  # |b(2)| > 2 * 2
    with pytest.raises(InputError):
        NewformSpec(1, 1, trivial_char(1), {})


@pytest.mark.parametrize("seed", range(5))
def test_extended_sequence_recursion_and_multiplicativity(seed):
    rng = random.Random(seed)
    k = rng.choice([2, 3, 4, 6])
    N = 300
    chi = trivial_char(1) if k % 2 == 0 else char_from_table(4, {1: 0, 3: 1}, 2)
    level = 1 if k % 2 == 0 else 4
    pc = {p: rng.randint(-2 * p ** (k - 1), 2 * p ** (k - 1)) for p in primerange(2, N + 1)}
    spec = NewformSpec(k, level, chi, pc)
    b = extend_coefficients(spec, N)
    for p in primerange(2, N + 1):
        c = spec.chi_p(p) * p ** (k - 1)
        q = p
        while q * p <= N:
            assert b[q * p] == b[p] * b[q] - c * b[q // p]
            q *= p
    for m in range(1, 40):
        for n in range(1, N // m + 1):
            if gcd(m, n) == 1:
                assert b[m * n] == b[m] * b[n]


def tenth_root(x: Fraction):
    return mpmath.root(mpmath.mpf(x.numerator) / x.denominator, 10)


def test_selberg_examples():
    zero = QExp(2, 1, 10, {})
    fit = selberg_fit(zero, 10, C=Fraction(11, 10))
    assert fit.holds and fit.n_star is None
    one = QExp.from_list([1], weight=2)
    fit = selberg_fit(one, 1, C=2)
    assert fit.n_star == 1 and fit.ratio10 == 1 and fit.holds
    assert not selberg_fit(one, 1, C=1).holds


def test_selberg_rejects_cyclotomic():
    f = QExp(12, 1, 2, {1: root_of_unity(3, 1)}, order=3)
    with pytest.raises(InputError):
        selberg_fit(f, 2)


def test_selberg_delta_matches_high_precision_scan(delta):
    fit = selberg_fit(delta, 200)
    with mpmath.workdps(60):
        ratios = [abs(mpmath.mpf(int(delta[n]))) / mpmath.power(n, mpmath.mpf(58) / 10)
                  for n in range(1, 201)]
        best = max(range(200), key=lambda i: ratios[i]) + 1
        assert fit.n_star == best
        assert mpmath.almosteq(tenth_root(fit.ratio10), ratios[best - 1],
                               rel_eps=mpmath.mpf(10) ** -40)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-10 ** 8, 10 ** 8), min_size=1, max_size=40), st.sampled_from([2, 3, 4, 12]))
def test_selberg_agrees_with_float_evaluation(vals, k):
    fit = selberg_fit(vals, len(vals), weight=k)
    with mpmath.workdps(50):
        ratios = [abs(mpmath.mpf(a)) / mpmath.power(n, mpmath.mpf(5 * k - 2) / 10)
                  for n, a in enumerate(vals, start=1)]
        peak = max(ratios)
        if peak == 0:
            assert fit.n_star is None
        else:
            assert mpmath.almosteq(ratios[fit.n_star - 1], peak, rel_eps=mpmath.mpf(10) ** -30)
            assert mpmath.almosteq(tenth_root(fit.ratio10), peak, rel_eps=mpmath.mpf(10) ** -30)


def test_joint_constant(delta):
    b_like = [x * 3 for x in delta.to_list(50)]
    a_fit = selberg_fit(delta, 50)
    b_fit = selberg_fit(b_like, 50, weight=12)
    assert joint_constant(a_fit, b_fit) is b_fit
