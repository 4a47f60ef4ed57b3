"""Newform coefficients from prime data, the Delta oracle, Selberg-bound fits."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from sympy import isprime, primerange

from .characters import DirichletChar, char_eval, trivial_char
from .exactnum import InputError
from .qseries import QExp


@dataclass(frozen=True)
class NewformSpec:
    """Weight, level, real character and the prime coefficients b(p)."""

    weight: int
    level: int
    character: DirichletChar
    prime_coeffs: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.weight, int) or self.weight < 2:
            raise InputError(f"weight must be an integer >= 2, got {self.weight!r}")
        if not isinstance(self.level, int) or self.level < 1:
            raise InputError(f"bad level {self.level!r}")
        if self.character.order > 2:
            raise InputError("newform character must be real (order <= 2)")
        clean = {}
        for p, b in self.prime_coeffs.items():
            if not isinstance(p, int) or not isprime(p):
                raise InputError(f"prime_coeffs key {p!r} is not prime")
            if not isinstance(b, int) or isinstance(b, bool):
                raise InputError(f"b({p}) = {b!r} is not an integer")
            if abs(b) > 2 * p ** (self.weight - 1):
                raise InputError(f"|b({p})| = {abs(b)} exceeds 2*{p}^{self.weight - 1}")
            clean[p] = b
        object.__setattr__(self, "prime_coeffs", dict(sorted(clean.items())))

    def chi_p(self, p: int) -> int:
        """chi(p), taken to be 0 at primes dividing the level."""
        if self.level % p == 0:
            return 0
        return int(char_eval(self.character, p))


def delta_spec(prime_coeffs: Mapping[int, int]) -> NewformSpec:
    return NewformSpec(12, 1, trivial_char(1), prime_coeffs)


def extend_coefficients(spec: NewformSpec, nmax: int) -> list:
    """b(0..nmax) with b(0) = 0, extended multiplicatively from b(p).

    Prime powers follow b(p^e) = b(p) b(p^(e-1)) - chi(p) p^(k-1) b(p^(e-2)).
    """
    if not isinstance(nmax, int) or nmax < 1:
        raise InputError(f"nmax must be a positive integer, got {nmax!r}")
    missing = [p for p in primerange(2, nmax + 1) if p not in spec.prime_coeffs]
    if missing:
        raise InputError(f"missing prime coefficient b({missing[0]})"
                         + (f" (and {len(missing) - 1} more)" if len(missing) > 1 else ""))
    k = spec.weight
    b = [0] * (nmax + 1)
    b[1] = 1
    spf = list(range(nmax + 1))
    for p in primerange(2, int(nmax ** 0.5) + 1):
        for m in range(p * p, nmax + 1, p):
            if spf[m] == m:
                spf[m] = p
    for p in primerange(2, nmax + 1):
        bp = spec.prime_coeffs[p]
        c = spec.chi_p(p) * p ** (k - 1)
        prev, cur = 1, bp
        q = p
        b[q] = cur
        while q * p <= nmax:
            prev, cur = cur, bp * cur - c * prev
            q *= p
            b[q] = cur
    for n in range(2, nmax + 1):
        p = spf[n]
        q = p
        while n % (q * p) == 0:
            q *= p
        if q != n:
            b[n] = b[q] * b[n // q]
    return b


def delta_oracle(nmax: int) -> QExp:
    """q * prod_{n>=1} (1 - q^n)^24 up to q^nmax by dense products."""
    if not isinstance(nmax, int) or nmax < 1:
        raise InputError(f"nmax must be a positive integer, got {nmax!r}")
    D = nmax - 1  # degree bound for the product before the shift by q
    eta = [0] * (D + 1)
    eta[0] = 1
    for n in range(1, D + 1):
        eta = eta[:n] + [eta[i] - eta[i - n] for i in range(n, D + 1)]
    power = list(eta)
    support = [(i, c) for i, c in enumerate(eta) if c]
    for _ in range(23):
        nxt = [0] * (D + 1)
        for i, c in support:
            for j in range(D + 1 - i):
                x = power[j]
                if x:
                    nxt[i + j] += c * x
        power = nxt
    return QExp.from_list(power, weight=12)


def delta_prime_coeffs(delta: QExp) -> dict:
    return {p: int(delta[p]) for p in primerange(2, delta.trunc + 1)}


@dataclass(frozen=True)
class BoundFit:
    """Where |a(n)| / n^(k/2 - 1/5) peaks on 1..nmax.

    ``ratio10`` is the tenth power of that peak ratio, exact. ``holds`` is
    None unless a candidate C was given.
    """

    weight: int
    nmax: int
    exponent: Fraction
    n_star: Optional[int]
    abs_a: Fraction
    ratio10: Fraction
    C: Optional[Fraction] = None
    holds: Optional[bool] = None

    @property
    def ratio_float(self) -> float:
        return float(self.ratio10) ** 0.1


def _abs_values(f) -> list:
    if isinstance(f, QExp):
        if not f.is_rational:
            raise InputError("Selberg fit needs rational coefficients")
        return f.to_list()
    return [Fraction(x) for x in f]


def selberg_fit(f, nmax: int, C=None, weight: Optional[int] = None) -> BoundFit:
    """Exact sup of |a(n)| / n^((5k-2)/10) for n <= nmax.

    ``f`` is a rational QExp or a plain sequence a(1), a(2), ... (then
    ``weight`` is required). Comparisons are made on tenth powers, so the
    check ``|a(n)| < C n^(k/2-1/5)`` becomes ``|a(n)|^10 < C^10 n^(5k-2)``.
    """
    vals = _abs_values(f)
    k = f.weight if isinstance(f, QExp) else weight
    if k is None:
        raise InputError("weight required for a bare sequence")
    if nmax > len(vals):
        raise InputError(f"nmax={nmax} exceeds truncation {len(vals)}")
    d = 5 * k - 2
    best_n, best_a, best = None, Fraction(0), Fraction(0)
    for n in range(1, nmax + 1):
        a = abs(vals[n - 1])
        if not a:
            continue
        # |a(n)|^10 n_best^d > |a(best)|^10 n^d
        if best_n is None or a ** 10 * best_n ** d > best_a ** 10 * n ** d:
            best_n, best_a = n, a
            best = a ** 10 / Fraction(n ** d)
    holds = None
    if C is not None:
        C = Fraction(C)
        if C <= 0:
            raise InputError("C must be positive")
        holds = best < C ** 10
    return BoundFit(k, nmax, Fraction(d, 10), best_n, best_a, best,
                    C, holds)


def joint_constant(*fits: BoundFit) -> BoundFit:
    """The fit with the largest peak ratio; a C beating it beats all."""
    return max(fits, key=lambda r: r.ratio10)
