"""Exact scalars: rationals, p-adic valuations and cyclotomic field elements.

Rationals are :class:`fractions.Fraction`, which already keeps lowest terms
with a positive denominator. Elements of Q(zeta_L) are stored as the unique
residue of a polynomial in zeta_L modulo the L-th cyclotomic polynomial, so
two elements are equal iff their coefficient vectors are equal.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from sympy import divisors, isprime, totient

Rat = Fraction
Scalar = Union[Fraction, "CycloElem"]

#: valuation of zero; compares above every integer
INF = math.inf

_RAT_RE = re.compile(r"-?\d+(/\d+)?\Z")


class InputError(ValueError):
    """Malformed or out-of-contract input."""


def rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return rat_from_str(x)
    raise InputError(f"not a rational: {x!r}")


def rat_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def rat_from_str(s: str) -> Fraction:
    if not isinstance(s, str) or not _RAT_RE.match(s):
        raise InputError(f"bad rational string {s!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise InputError(f"zero denominator in {s!r}") from None


def vp(x, p: int):
    """p-adic valuation of a rational; ``INF`` for zero.

    >>> vp(8, 2), vp(Fraction(3, 4), 2)
    (3, -2)
    """
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# --- integer polynomials (coefficient lists, lowest degree first) ---------

def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence):
    """Quotient and remainder of a by b (b nonzero) over Q."""
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    _trim(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
        _trim(a)
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple:
    """Integer coefficients of Phi_L, lowest degree first.

    Built as (x^L - 1) divided by Phi_d for each proper divisor d of L.
    """
    if not isinstance(L, int) or L < 1:
        raise InputError(f"cyclotomic order must be a positive integer, got {L!r}")
    num = [-1] + [0] * (L - 1) + [1]
    for d in divisors(L)[:-1]:
        q, r = _poly_divmod(num, cyclotomic_polynomial(d))
        assert not r, "inexact cyclotomic division"
        num = q
    out = []
    for c in num:
        assert c.denominator == 1
        out.append(int(c))
    return tuple(out)


@lru_cache(maxsize=None)
def _degree(L: int) -> int:
    return int(totient(L))


@lru_cache(maxsize=None)
def _power_table(L: int) -> tuple:
    """Reduced coefficient vectors of x^j mod Phi_L for 0 <= j < L."""
    phi = cyclotomic_polynomial(L)
    d = len(phi) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(L):
        rows.append(tuple(cur))
        # multiply by x, then eliminate x^d using the monic Phi_L
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for i in range(d):
                cur[i] -= top * phi[i]
    return tuple(rows)


def _reduce(poly: Sequence, L: int) -> tuple:
    """Reduce an arbitrary-degree polynomial in zeta_L to canonical form."""
    table = _power_table(L)
    d = _degree(L)
    out = [Fraction(0)] * d
    for j, c in enumerate(poly):
        if c:
            row = table[j % L]
            for i, r in enumerate(row):
                if r:
                    out[i] += c * r
    return tuple(out)


class CycloElem:
    """An element of Q(zeta_L) in the power basis modulo Phi_L."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence = (), *, reduced: bool = False):
        if not isinstance(order, int) or order < 1:
            raise InputError(f"cyclotomic order must be a positive integer, got {order!r}")
        self.order = order
        if reduced:
            c = tuple(coeffs)
            assert len(c) == _degree(order)
        else:
            c = _reduce([Fraction(x) for x in coeffs], order)
        self.coeffs = c

    # constructors -----------------------------------------------------

    @classmethod
    def from_rational(cls, x, order: int = 1) -> "CycloElem":
        d = _degree(order)
        return cls(order, (Fraction(x),) + (Fraction(0),) * (d - 1), reduced=True)

    @classmethod
    def zero(cls, order: int) -> "CycloElem":
        return cls.from_rational(0, order)

    @classmethod
    def one(cls, order: int) -> "CycloElem":
        return cls.from_rational(1, order)

    # queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def is_integral(self) -> bool:
        # the power basis of Z[zeta_L] is an integral basis
        return all(c.denominator == 1 for c in self.coeffs)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "CycloElem":
        if isinstance(other, CycloElem):
            if other.order != self.order:
                raise InputError(
                    f"order mismatch: {self.order} vs {other.order}; embed first")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycloElem.from_rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CycloElem(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)],
                         reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coeffs], reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_rational():
            return self.scale(o.coeffs[0])
        if self.is_rational():
            return o.scale(self.coeffs[0])
        return CycloElem(self.order, _reduce(_poly_mul(self.coeffs, o.coeffs), self.order),
                         reduced=True)

    __rmul__ = __mul__

    def scale(self, c) -> "CycloElem":
        c = Fraction(c)
        return CycloElem(self.order, [c * a for a in self.coeffs], reduced=True)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self.scale(1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * cyclo_inv(o)

    def __pow__(self, e: int):
        if e < 0:
            return cyclo_inv(self) ** (-e)
        result = CycloElem.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, CycloElem):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        return f"CycloElem[{self.order}]({' + '.join(terms) or '0'})"


def cyclo_mul(a: CycloElem, b: CycloElem) -> CycloElem:
    if a.order != b.order:
        raise InputError(f"order mismatch: {a.order} vs {b.order}")
    return a * b


def cyclo_inv(a: CycloElem) -> CycloElem:
    """Inverse via the extended Euclidean algorithm against Phi_L."""
    if a.is_zero():
        raise ZeroDivisionError("inverse of zero in cyclotomic field")
    if a.is_rational():
        return CycloElem.from_rational(1 / a.coeffs[0], a.order)
    L = a.order
    # invariant: s * a == r  (mod Phi_L)
    r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(L)], _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, rem = _poly_divmod(r0, r1)
        qs = _poly_mul(q, s1)
        s_new = [x - y for x, y in _zip_longest(s0, qs)]
        r0, r1 = r1, rem
        s0, s1 = s1, _trim(s_new)
    # r1 is a nonzero constant since Phi_L is irreducible
    c = r1[0]
    return CycloElem(L, [x / c for x in s1])


def _zip_longest(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return zip(a, b)


def cyclo_conj(a: CycloElem) -> CycloElem:
    """Complex conjugation zeta_L -> zeta_L^(L-1)."""
    L = a.order
    poly = [Fraction(0)] * L
    for i, c in enumerate(a.coeffs):
        poly[(-i) % L] += c
    return CycloElem(L, _reduce(poly, L), reduced=True)


def cyclo_embed(a: CycloElem, target: int) -> CycloElem:
    """Map Q(zeta_L) into Q(zeta_target) by zeta_L -> zeta_target^(target/L)."""
    if not isinstance(target, int) or target < 1 or target % a.order:
        raise InputError(f"cannot embed order {a.order} into order {target}")
    if target == a.order:
        return a
    step = target // a.order
    poly = [Fraction(0)] * target
    for i, c in enumerate(a.coeffs):
        poly[(i * step) % target] += c
    return CycloElem(target, _reduce(poly, target), reduced=True)


@lru_cache(maxsize=4096)
def root_of_unity(L: int, j: int) -> CycloElem:
    if not isinstance(L, int) or L < 1:
        raise InputError(f"order must be a positive integer, got {L!r}")
    row = _power_table(L)[j % L]
    return CycloElem(L, [Fraction(x) for x in row], reduced=True)


def sum_of_roots(L: int, counts: dict) -> CycloElem:
    """Sum of c * zeta_L^j over ``counts = {j: c}``, reduced once."""
    poly = [Fraction(0)] * L
    for j, c in counts.items():
        poly[j % L] += c
    return CycloElem(L, _reduce(poly, L), reduced=True)


def as_cyclo(x, order: int) -> CycloElem:
    """View a rational or cyclotomic scalar inside Q(zeta_order)."""
    if isinstance(x, CycloElem):
        return cyclo_embed(x, order)
    return CycloElem.from_rational(x, order)


def cyclo_to_json(a: CycloElem) -> dict:
    return {"order": a.order, "coeffs": [rat_to_str(c) for c in a.coeffs]}


def cyclo_from_json(obj) -> CycloElem:
    if not isinstance(obj, dict) or set(obj) != {"order", "coeffs"}:
        raise InputError(f"bad cyclotomic element {obj!r}")
    L = obj["order"]
    coeffs = obj["coeffs"]
    if not isinstance(L, int) or isinstance(L, bool) or L < 1:
        raise InputError(f"bad cyclotomic order {L!r}")
    if not isinstance(coeffs, list) or len(coeffs) != _degree(L):
        raise InputError(f"order {L} needs {_degree(L)} coefficients")
    return CycloElem(L, [rat_from_str(c) for c in coeffs], reduced=True)


def degree(L: int) -> int:
    """Degree of Q(zeta_L) over Q (Euler's totient)."""
    return _degree(L)
