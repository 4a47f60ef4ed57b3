"""Truncated q-expansions sum_{n>=1} a(n) q^(n/mu) and operators on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping, Optional

from .exactnum import (
    CycloElem,
    InputError,
    as_cyclo,
    degree,
    root_of_unity,
)


class IdentityFailure(ArithmeticError):
    """An exact operator identity that must hold did not."""


def _is_rat(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True)
class QExp:
    """A cusp-form q-expansion, trusted for indices ``1 <= n <= trunc``.

    ``order`` is None for rational coefficients, otherwise the cyclotomic
    order L and every coefficient is a CycloElem of order exactly L. Orders
    whose field is Q itself (L = 1, 2) are stored as rational. Zero
    coefficients are never stored.
    """

    weight: int
    width: int
    trunc: int
    coeffs: Mapping[int, object] = field(default_factory=dict)
    order: Optional[int] = None

    def __post_init__(self):
        for name in ("weight", "width", "trunc"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError(f"{name} must be an integer, got {v!r}")
        if self.width < 1 or self.trunc < 1:
            raise InputError("width and trunc must be positive")
        order = self.order
        if order is not None and (not isinstance(order, int) or order < 1):
            raise InputError(f"bad cyclotomic order {order!r}")
        if order is not None and degree(order) == 1:
            order = None
        clean = {}
        for n, c in self.coeffs.items():
            if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= self.trunc:
                raise InputError(f"index {n!r} outside 1..{self.trunc}")
            if order is None:
                if isinstance(c, CycloElem):
                    if not c.is_rational():
                        raise InputError(f"non-rational coefficient at {n} in rational series")
                    c = c.coeffs[0]
                elif not _is_rat(c):
                    raise InputError(f"bad coefficient at {n}: {c!r}")
                c = Fraction(c)
            else:
                if _is_rat(c):
                    c = CycloElem.from_rational(c, order)
                elif not isinstance(c, CycloElem) or order % c.order:
                    raise InputError(f"coefficient at {n} not in Q(zeta_{order})")
                else:
                    c = as_cyclo(c, order)
                if c.is_zero():
                    continue
            if c != 0:
                clean[n] = c
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_list(cls, values, weight: int, width: int = 1, trunc: Optional[int] = None,
                  order: Optional[int] = None) -> "QExp":
        """Build from ``values[0] = a(1), values[1] = a(2), ...``."""
        values = list(values)
        return cls(weight, width, trunc if trunc is not None else len(values),
                   {i + 1: v for i, v in enumerate(values)}, order)

    @property
    def is_rational(self) -> bool:
        return self.order is None

    def __getitem__(self, n: int):
        if not 1 <= n <= self.trunc:
            if n < 1:
                raise IndexError(f"index {n} < 1")
            raise IndexError(f"index {n} beyond truncation {self.trunc}")
        default = Fraction(0) if self.order is None else CycloElem.zero(self.order)
        return self.coeffs.get(n, default)

    def to_list(self, N: Optional[int] = None) -> list:
        N = self.trunc if N is None else N
        return [self[n] for n in range(1, N + 1)]

    def truncate(self, N: int) -> "QExp":
        if N > self.trunc:
            raise InputError(f"cannot extend truncation {self.trunc} to {N}")
        return QExp(self.weight, self.width, N,
                    {n: c for n, c in self.coeffs.items() if n <= N}, self.order)

    def embed(self, order: Optional[int]) -> "QExp":
        """The same series in a larger coefficient field."""
        if order is None or degree(order) == 1:
            if self.order is not None:
                raise InputError("cannot embed a cyclotomic series into Q")
            return self
        if self.order is not None and order % self.order:
            raise InputError(f"order {self.order} does not divide {order}")
        return QExp(self.weight, self.width, self.trunc,
                    {n: as_cyclo(c, order) for n, c in self.coeffs.items()}, order)

    def descend(self) -> "QExp":
        """Rewrite over Q when every coefficient is rational."""
        if self.order is None:
            return self
        if not all(c.is_rational() for c in self.coeffs.values()):
            raise IdentityFailure("series has non-rational coefficients")
        return QExp(self.weight, self.width, self.trunc,
                    {n: c.coeffs[0] for n, c in self.coeffs.items()})

    def __add__(self, other: "QExp") -> "QExp":
        return qexp_add(self, other)

    def __neg__(self) -> "QExp":
        return qexp_scale(-1, self)

    def __sub__(self, other: "QExp") -> "QExp":
        return qexp_add(self, qexp_scale(-1, other))

    def __rmul__(self, c) -> "QExp":
        return qexp_scale(c, self)


def _common_order(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return lcm(a, b)


def _check_compatible(f: QExp, g: QExp):
    if f.weight != g.weight:
        raise InputError(f"weight mismatch: {f.weight} vs {g.weight}")
    if f.width != g.width:
        raise InputError(f"width mismatch: {f.width} vs {g.width}")


def qexp_add(f: QExp, g: QExp) -> QExp:
    _check_compatible(f, g)
    L = _common_order(f.order, g.order)
    f, g = f.embed(L), g.embed(L)
    N = min(f.trunc, g.trunc)
    out = {n: c for n, c in f.coeffs.items() if n <= N}
    for n, c in g.coeffs.items():
        if n <= N:
            out[n] = out[n] + c if n in out else c
    return QExp(f.weight, f.width, N, out, L)


def qexp_scale(c, f: QExp) -> QExp:
    if isinstance(c, CycloElem):
        L = _common_order(f.order, c.order)
        if degree(L) == 1:
            return qexp_scale(c.to_rational(), f)
        f = f.embed(L)
        c = as_cyclo(c, L)
        return QExp(f.weight, f.width, f.trunc, {n: c * a for n, a in f.coeffs.items()}, L)
    if not _is_rat(c):
        raise InputError(f"bad scalar {c!r}")
    c = Fraction(c)
    return QExp(f.weight, f.width, f.trunc, {n: a * c for n, a in f.coeffs.items()}, f.order)


def zero_series(weight: int, width: int, trunc: int, order: Optional[int] = None) -> QExp:
    return QExp(weight, width, trunc, {}, order)


def dilate(f: QExp, K: int) -> QExp:
    """h(z) -> h(z/K): the width grows by K, indices are untouched.

    No K^(k/2) normalisation is applied; that factor is irrational for odd
    weight and is left to the caller.
    """
    if not isinstance(K, int) or K < 1:
        raise InputError(f"dilation factor must be a positive integer, got {K!r}")
    return QExp(f.weight, f.width * K, f.trunc, f.coeffs, f.order)


def translate_stroke(f: QExp, j: int, K: int) -> QExp:
    """Stroke by the translation z -> z + j*mu/K: a(n) -> a(n) zeta_K^(jn)."""
    if not isinstance(K, int) or K < 1:
        raise InputError(f"K must be a positive integer, got {K!r}")
    L = lcm(f.order or 1, K)
    g = f.embed(L) if degree(L) > 1 else f
    step = L // K
    out = {}
    for n, a in g.coeffs.items():
        z = root_of_unity(L, j * n * step)
        out[n] = a * z if degree(L) > 1 else a * z.to_rational()
    return QExp(f.weight, f.width, f.trunc, out, L)


def subseries(f: QExp, K: int) -> QExp:
    """Keep only coefficients at indices divisible by K."""
    if not isinstance(K, int) or K < 1:
        raise InputError(f"K must be a positive integer, got {K!r}")
    return QExp(f.weight, f.width, f.trunc,
                {n: c for n, c in f.coeffs.items() if n % K == 0}, f.order)


def subseries_via_strokes(f: QExp, K: int) -> QExp:
    """(1/K) * sum_{j=1..K} f|gamma^j, evaluated exactly in Q(zeta_K).

    For a rational input the result must come out rational; anything else
    means the arithmetic is broken and raises IdentityFailure.
    """
    if not isinstance(K, int) or K < 1:
        raise InputError(f"K must be a positive integer, got {K!r}")
    total = translate_stroke(f, 1, K)
    for j in range(2, K + 1):
        total = qexp_add(total, translate_stroke(f, j, K))
    total = qexp_scale(Fraction(1, K), total)
    if f.order is None:
        return total.descend()
    return total


def qexp_equal(f: QExp, g: QExp, N: Optional[int] = None) -> bool:
    """Exact coefficient agreement for n <= N in a common field."""
    _check_compatible(f, g)
    if N is None:
        N = min(f.trunc, g.trunc)
    if N > min(f.trunc, g.trunc):
        raise InputError(f"N={N} exceeds a truncation ({f.trunc}, {g.trunc})")
    L = _common_order(f.order, g.order)
    f, g = f.embed(L), g.embed(L)
    keys = {n for n in f.coeffs if n <= N} | {n for n in g.coeffs if n <= N}
    return all(f[n] == g[n] for n in keys)
