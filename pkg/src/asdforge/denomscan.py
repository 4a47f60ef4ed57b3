"""Denominator profiles of rational q-expansions over a finite window."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from sympy import primefactors

from .exactnum import InputError, vp
from .qseries import QExp, qexp_scale

BOUNDED = "bounded_up_to_N"
GROWTH = "growth_detected"


@dataclass(frozen=True)
class DenomReport:
    """Per-prime denominator exponents and the growth verdict.

    ``profiles[p][n-1]`` is -v_p(den a(n)), i.e. min(0, v_p(a(n))), so a
    p-power denominator shows up as a negative entry. ``witnesses[p]`` lists
    the indices where the running maximum of v_p(den a(n)) strictly grew.
    Growth is only ever reported for the tested window ``n <= nmax``.
    """

    nmax: int
    window: int
    profiles: dict
    running_lcm: list
    witnesses: dict
    classification: str
    growth_prime: Optional[int]
    c_candidate: int

    @property
    def bounded(self) -> bool:
        return self.classification == BOUNDED


def _rational_coeffs(f: QExp, nmax: int) -> list:
    if not f.is_rational:
        raise InputError("denominator profiling needs rational coefficients")
    if nmax > f.trunc:
        raise InputError(f"nmax={nmax} exceeds truncation {f.trunc}")
    return f.to_list(nmax)


def denominator_profile(f: QExp, nmax: Optional[int] = None,
                        primes: Union[str, Sequence[int]] = "auto",
                        window: int = 3) -> DenomReport:
    nmax = f.trunc if nmax is None else nmax
    if window < 1:
        raise InputError("growth window must be at least 1")
    coeffs = _rational_coeffs(f, nmax)
    running = []
    cur = 1
    for a in coeffs:
        cur = lcm(cur, a.denominator)
        running.append(cur)
    if primes == "auto":
        plist = primefactors(cur)
    else:
        plist = sorted(set(primes))
    profiles, witnesses = {}, {}
    for p in plist:
        prof, wit, best = [], [], 0
        for n, a in enumerate(coeffs, start=1):
            v = -vp(a.denominator, p)
            prof.append(v)
            if -v > best:
                best = -v
                wit.append(n)
        profiles[p] = prof
        witnesses[p] = wit
    growing = [p for p in plist if len(witnesses[p]) >= window]
    return DenomReport(
        nmax=nmax,
        window=window,
        profiles=profiles,
        running_lcm=running,
        witnesses=witnesses,
        classification=GROWTH if growing else BOUNDED,
        growth_prime=growing[0] if growing else None,
        c_candidate=cur,
    )


def is_integral(f: QExp) -> bool:
    if f.is_rational:
        return all(c.denominator == 1 for c in f.coeffs.values())
    return all(c.is_integral() for c in f.coeffs.values())


def clear_denominators(f: QExp, c: int):
    """Multiply through by c; returns (series, integral up to trunc)."""
    if not isinstance(c, int) or c < 1:
        raise InputError(f"c must be a positive integer, got {c!r}")
    g = qexp_scale(Fraction(c), f)
    return g, is_integral(g)
