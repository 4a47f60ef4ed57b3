"""ASD congruence verdicts, the P(m) threshold, and coefficient-identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, prod
from typing import Optional, Sequence

from sympy import integer_nthroot, isprime

from .characters import DirichletChar, char_eval
from .exactnum import INF, InputError, vp
from .qseries import QExp


@dataclass(frozen=True)
class AsdVerdict:
    p: int
    n: int
    lhs: int
    required: int
    achieved: object  # int, or INF when lhs == 0
    passed: bool
    advisory: bool

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "lhs": str(self.lhs), "required": self.required,
                "achieved": "inf" if self.achieved == INF else self.achieved,
                "pass": self.passed, "advisory": self.advisory}


@dataclass
class AsdReport:
    verdicts: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [v for v in self.verdicts if not v.passed]

    @property
    def ok(self) -> bool:
        """No failure at a prime above N1."""
        return not any(not v.passed and not v.advisory for v in self.verdicts)

    def summary(self) -> dict:
        return {
            "checked": len(self.verdicts),
            "passed": sum(v.passed for v in self.verdicts),
            "failed": sum(not v.passed for v in self.verdicts),
            "advisory": sum(v.advisory for v in self.verdicts),
        }

    def extend(self, other: "AsdReport") -> "AsdReport":
        self.verdicts = sorted(self.verdicts + other.verdicts, key=lambda v: (v.p, v.n))
        return self


def integer_coeffs(a: QExp) -> list:
    """a(0..trunc) as Python ints with a(0) = 0."""
    if not a.is_rational:
        raise InputError("congruence checks need integer coefficients; got a cyclotomic series")
    out = [0]
    for n in range(1, a.trunc + 1):
        c = a[n]
        if c.denominator != 1:
            raise InputError(f"a({n}) = {c} is not an integer; clear denominators first")
        out.append(int(c))
    return out


def _need_prime(p: int):
    if not isinstance(p, int) or isinstance(p, bool) or not isprime(p):
        raise InputError(f"{p!r} is not prime")


def asd_check(a: QExp, b: Sequence[int], chi: DirichletChar, k: int, p: int,
              nmax: int, n1: int = 0) -> AsdReport:
    """Evaluate a(np) - b(p)a(n) + chi(p)p^(k-1)a(n/p) for n = 1..nmax.

    Each value must be divisible by p^((k-1)(1 + ord_p n)). Verdicts for
    p <= n1 are flagged advisory.
    """
    _need_prime(p)
    if nmax * p > a.trunc:
        raise InputError(f"need a(n*p) up to {nmax * p}, series truncated at {a.trunc}")
    if len(b) <= p:
        raise InputError(f"newform sequence lacks b({p})")
    A = integer_coeffs(a)
    if chi.order > 2:
        raise InputError("the ASD character must be real")
    bp = int(b[p])
    c = int(char_eval(chi, p)) * p ** (k - 1)
    verdicts = []
    for n in range(1, nmax + 1):
        lhs = A[n * p] - bp * A[n] + (c * A[n // p] if n % p == 0 else 0)
        required = (k - 1) * (1 + vp(n, p))
        achieved = vp(lhs, p)
        verdicts.append(AsdVerdict(p, n, lhs, required, achieved,
                                   achieved >= required, p <= n1))
    return AsdReport(verdicts)


def asd_check_primes(a: QExp, b: Sequence[int], chi: DirichletChar, k: int,
                     primes: Sequence[int], nmax: int, n1: int = 0) -> AsdReport:
    report = AsdReport()
    for p in sorted(set(primes)):
        report.extend(asd_check(a, b, chi, k, p, nmax, n1))
    return report


@dataclass(frozen=True)
class ThresholdResult:
    """Least P > N1 with 3 C^2 A(m)^2 n^(k/2-1/5) < n^(k-1) for all n > P.

    A(m) = m^(k/2-1/5) is kept symbolic as ``(m, a_exponent)``.
    ``analytic`` is the threshold ignoring N1.
    """

    C: Fraction
    m: int
    k: int
    n1: int
    a_exponent: Fraction
    P: int
    analytic: int

    @property
    def A_m(self) -> tuple:
        return (self.m, self.a_exponent)

    @property
    def binding(self) -> str:
        return "N1" if self.P == self.n1 + 1 and self.analytic < self.P else "inequality"


def threshold_holds(C, m: int, k: int, n: int) -> bool:
    """The strict inequality at n, cleared to integers by tenth powers."""
    C = Fraction(C)
    lhs = (3 * C * C) ** 10 * m ** (10 * k - 4)
    return n ** (5 * k - 8) > lhs


def threshold_Pm(C, m: int, k: int, n1: int) -> ThresholdResult:
    """Least integer P > n1 past which the threshold inequality always holds.

    Dividing by n^(k/2-1/5) and raising to the tenth power gives
    n^(5k-8) > (3C^2)^10 m^(10k-4); the left side is increasing in n, so
    the cutoff is the integer (5k-8)-th root of the right side.
    """
    if not isinstance(k, int) or k < 2:
        raise InputError(f"threshold needs weight k >= 2, got {k!r}")
    if not isinstance(m, int) or m < 1:
        raise InputError(f"m must be a positive integer, got {m!r}")
    C = Fraction(C)
    if C <= 1:
        raise InputError("C must exceed 1")
    bound = (3 * C * C) ** 10 * m ** (10 * k - 4)
    # n^d > bound  <=>  n^d > floor(bound) for integer n^d
    root, _ = integer_nthroot(bound.numerator // bound.denominator, 5 * k - 8)
    analytic = int(root)
    P = max(analytic, n1 + 1)
    return ThresholdResult(C, m, k, n1, Fraction(5 * k - 2, 10), P, analytic)


@dataclass
class LemmaReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def first_violation(self) -> Optional[dict]:
        return self.violations[0] if self.violations else None

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "passed": self.passed,
                "violations": self.violations}


def _lookup(A: list, x: Fraction):
    """a(x), zero unless x is a positive integer."""
    if x.denominator != 1 or x < 1:
        return 0
    return A[int(x)]


def lemma1_verify(a: QExp, b: Sequence[int], chi: DirichletChar, m: int, p: int,
                  emax: int) -> LemmaReport:
    """Check the p-power recursion for a at m p^e, and a(m p^e) = b(p^e) a(m)
    when p does not divide m, for 0 <= e <= emax."""
    _need_prime(p)
    k = a.weight
    top = m * p ** emax
    if top > a.trunc:
        raise InputError(f"need a({top}), series truncated at {a.trunc}")
    coprime = m % p != 0
    if coprime and p ** emax >= len(b):
        raise InputError(f"need b({p ** emax}), sequence has {len(b) - 1} terms")
    if chi.order > 2:
        raise InputError("the newform character must be real")
    A = integer_coeffs(a)
    c = int(char_eval(chi, p)) * p ** (k - 1)
    rep = LemmaReport("lemma1")
    for e in range(emax + 1):
        here = A[m * p ** e]
        if e >= 1:
            rep.checked += 1
            rhs = b[p] * _lookup(A, Fraction(m * p ** e, p)) - c * _lookup(A, Fraction(m * p ** e, p * p))
            if here != rhs:
                rep.violations.append({"clause": "recursion", "e": e, "index": m * p ** e,
                                       "lhs": str(here), "rhs": str(rhs)})
        if coprime:
            rep.checked += 1
            rhs = b[p ** e] * A[m]
            if here != rhs:
                rep.violations.append({"clause": "closed_form", "e": e, "index": m * p ** e,
                                       "lhs": str(here), "rhs": str(rhs)})
    rep.violations.sort(key=lambda v: (v["e"], v["clause"] != "recursion"))
    return rep


def _check_primes(m: int, primes: Sequence[int]):
    if len(set(primes)) != len(primes):
        raise InputError(f"repeated primes in {list(primes)}")
    for p in primes:
        _need_prime(p)
        if m % p == 0:
            raise InputError(f"prime {p} divides m={m}")


def lemma2_verify(a: QExp, b: Sequence[int], m: int, primes: Sequence[int],
                  emax_total: int) -> LemmaReport:
    """a(m * prod p_i^e_i) == a(m) b(prod p_i^e_i) for all sum(e_i) <= emax_total."""
    primes = list(primes)
    _check_primes(m, primes)
    A = integer_coeffs(a)
    rep = LemmaReport("lemma2")
    tuples = [es for es in product(range(emax_total + 1), repeat=len(primes))
              if sum(es) <= emax_total]
    for es in tuples:
        M = prod(p ** e for p, e in zip(primes, es))
        if m * M > a.trunc:
            raise InputError(f"need a({m * M}), series truncated at {a.trunc}")
        if M >= len(b):
            raise InputError(f"need b({M}), sequence has {len(b) - 1} terms")
    for es in tuples:
        M = prod(p ** e for p, e in zip(primes, es))
        rep.checked += 1
        lhs, rhs = A[m * M], A[m] * b[M]
        if lhs != rhs:
            rep.violations.append({"exponents": list(es), "index": m * M,
                                   "lhs": str(lhs), "rhs": str(rhs)})
    return rep


def product_identity_check(a: QExp, m: int, primes: Sequence[int],
                           exponents: Sequence[int]) -> LemmaReport:
    """a(m) a(m prod p_i^e_i) == a(m prod_{i<r} p_i^e_i) a(m p_r^e_r)."""
    primes, exponents = list(primes), list(exponents)
    if not primes or len(primes) != len(exponents):
        raise InputError("need one exponent per prime")
    if any(not isinstance(e, int) or e < 0 for e in exponents):
        raise InputError("exponents must be non-negative integers")
    _check_primes(m, primes)
    full = m * prod(p ** e for p, e in zip(primes, exponents))
    head = m * prod(p ** e for p, e in zip(primes[:-1], exponents[:-1]))
    tail = m * primes[-1] ** exponents[-1]
    if max(full, head, tail) > a.trunc:
        raise InputError(f"need a({full}), series truncated at {a.trunc}")
    A = integer_coeffs(a)
    rep = LemmaReport("product_identity", checked=1)
    lhs, rhs = A[m] * A[full], A[head] * A[tail]
    if lhs != rhs:
        rep.violations.append({"exponents": exponents, "indices": [m, full, head, tail],
                               "lhs": str(lhs), "rhs": str(rhs)})
    return rep
