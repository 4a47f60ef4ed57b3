"""Dirichlet characters as exponent tables, Gauss sums and twists."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd, lcm
from typing import Mapping

from sympy import divisors, factorint, primerange, primitive_root

from .exactnum import (
    CycloElem,
    InputError,
    as_cyclo,
    cyclo_inv,
    degree,
    root_of_unity,
    sum_of_roots,
)
from .qseries import IdentityFailure, QExp, qexp_add, qexp_scale, translate_stroke


@dataclass(frozen=True)
class DirichletChar:
    """chi(j) = zeta_order^values[j] for j coprime to modulus, else 0.

    Keys of ``values`` are the residues 0 <= j < modulus coprime to it.
    Build through :func:`char_from_table` to get validation.
    """

    modulus: int
    order: int
    values: Mapping[int, int] = field(compare=True)

    def __call__(self, n: int):
        return char_eval(self, n)

    def exponent(self, n: int):
        """Exponent of chi(n), or None when gcd(n, modulus) > 1."""
        return self.values.get(n % self.modulus)

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def inverse(self) -> "DirichletChar":
        return DirichletChar(self.modulus, self.order,
                             {j: (-e) % self.order for j, e in self.values.items()})

    conj = inverse

    def __hash__(self):
        return hash((self.modulus, self.order, tuple(sorted(self.values.items()))))

    def __repr__(self):
        return f"DirichletChar(mod {self.modulus}, order {self.order})"


def units(K: int) -> list:
    return [j for j in range(K) if gcd(j, K) == 1]


def char_from_table(modulus: int, table: Mapping[int, int], order: int) -> DirichletChar:
    """Validate an exponent table and return the character.

    Multiplicativity is checked against every prime residue p < modulus;
    those generate the unit group, so this is equivalent to checking all
    pairs.
    """
    if not isinstance(modulus, int) or isinstance(modulus, bool) or modulus < 1:
        raise InputError(f"bad modulus {modulus!r}")
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise InputError(f"bad order {order!r}")
    vals = {}
    for j, e in table.items():
        if not isinstance(j, int) or not isinstance(e, int) or isinstance(e, bool):
            raise InputError(f"bad table entry {j!r}: {e!r}")
        r = j % modulus
        if r in vals:
            raise InputError(f"residue {r} given twice")
        vals[r] = e % order
    U = units(modulus)
    if set(vals) != set(U):
        missing = sorted(set(U) - set(vals))
        extra = sorted(set(vals) - set(U))
        raise InputError(f"table must cover exactly the units mod {modulus}"
                         f" (missing {missing}, non-units {extra})")
    if vals[1 % modulus] != 0:
        raise InputError("chi(1) must be 1")
    gens = [p % modulus for p in primerange(2, modulus) if modulus % p]
    for g in gens:
        eg = vals[g]
        for b in U:
            if vals[(g * b) % modulus] != (eg + vals[b]) % order:
                raise InputError(
                    f"not multiplicative: chi({g}*{b}) != chi({g})chi({b}) mod {modulus}")
    exact = order // gcd(order, *vals.values()) if vals else 1
    if exact != order:
        raise InputError(f"claimed order {order} but character has order {exact}")
    return DirichletChar(modulus, order, vals)


def trivial_char(K: int) -> DirichletChar:
    return char_from_table(K, {j: 0 for j in units(K)}, 1)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n >= 1."""
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise InputError(f"Jacobi symbol needs odd positive n, got {n!r}")
    a %= n
    t = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def quadratic_char(n: int) -> DirichletChar:
    """The real character j -> (j|n) for odd squarefree n."""
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise InputError(f"quadratic character needs odd positive n, got {n!r}")
    if any(e > 1 for e in factorint(n).values()):
        raise InputError(f"{n} is not squarefree")
    table = {j: (0 if jacobi_symbol(j, n) == 1 else 1) for j in units(n)}
    return char_from_table(n, table, 2 if any(table.values()) else 1)


def conductor(chi: DirichletChar) -> int:
    """Least f | modulus such that chi is 1 on units congruent to 1 mod f."""
    K = chi.modulus
    for f in divisors(K):
        if all(e == 0 for j, e in chi.values.items() if j % f == 1 % f):
            return f
    return K


def is_primitive(chi: DirichletChar) -> bool:
    return conductor(chi) == chi.modulus


def primitive_part(chi: DirichletChar) -> DirichletChar:
    """The character mod conductor(chi) inducing chi."""
    f = conductor(chi)
    table = {}
    for r in units(f):
        lift = next(x for x in range(r, r + f * chi.modulus + 1, f) if gcd(x, chi.modulus) == 1)
        table[r] = chi.values[lift % chi.modulus]
    return char_from_table(f, table, chi.order)


def induce(chi: DirichletChar, M: int) -> DirichletChar:
    """Lift chi to modulus M (a multiple of chi.modulus)."""
    if M % chi.modulus:
        raise InputError(f"{chi.modulus} does not divide {M}")
    return char_from_table(M, {j: chi.values[j % chi.modulus] for j in units(M)}, chi.order)


def char_mul(a: DirichletChar, b: DirichletChar) -> DirichletChar:
    if a.modulus != b.modulus:
        raise InputError("characters have different moduli")
    E = lcm(a.order, b.order)
    raw = {j: (a.values[j] * (E // a.order) + b.values[j] * (E // b.order)) % E
           for j in a.values}
    return _normalized(a.modulus, raw, E)


def _normalized(K: int, raw: Mapping[int, int], E: int) -> DirichletChar:
    g = gcd(E, *raw.values())
    e = E // g
    return DirichletChar(K, e, {j: (v // g) % e for j, v in raw.items()})


def _unit_group(K: int):
    """Generators and their orders for (Z/K)^*, via CRT over prime powers."""
    gens = []
    for p, a in sorted(factorint(K).items()):
        q = p ** a
        rest = K // q
        local = []
        if p == 2:
            if a >= 2:
                local.append((q - 1, 2))
            if a >= 3:
                local.append((5, q // 4))
        else:
            local.append((primitive_root(q), q - q // p))
        for g, n in local:
            # g mod q, 1 mod the coprime part
            x = g if rest == 1 else (g * rest * pow(rest, -1, q) + q * pow(q, -1, rest)) % K
            gens.append((x % K, n))
    return gens


def all_characters(K: int) -> list:
    """Every Dirichlet character mod K, each at its exact order."""
    if not isinstance(K, int) or K < 1:
        raise InputError(f"bad modulus {K!r}")
    gens = _unit_group(K)
    if not gens:
        return [trivial_char(K)]
    E = reduce(lcm, (n for _, n in gens), 1)
    logs = {}
    for exps in product(*(range(n) for _, n in gens)):
        u = 1
        for (g, _), x in zip(gens, exps):
            u = u * pow(g, x, K) % K
        logs[u] = exps
    chars = []
    for cs in product(*(range(n) for _, n in gens)):
        raw = {u: sum(c * x * (E // n) for c, x, (_, n) in zip(cs, xs, gens)) % E
               for u, xs in logs.items()}
        chars.append(_normalized(K, raw, E))
    return chars


def primitive_characters(K: int) -> list:
    return [chi for chi in all_characters(K) if is_primitive(chi)]


def char_eval(chi: DirichletChar, n: int):
    """chi(n) in Q(zeta_order); a Fraction when the order is at most 2."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise InputError(f"character argument must be an integer, got {n!r}")
    e = chi.exponent(n)
    if chi.order <= 2:
        if e is None:
            return Fraction(0)
        return Fraction(-1 if e else 1)
    if e is None:
        return CycloElem.zero(chi.order)
    return root_of_unity(chi.order, e)


def gauss_sum(chi: DirichletChar) -> CycloElem:
    """sum_{j coprime to K} chi(j) zeta_K^j in Q(zeta_lcm(order, K))."""
    K = chi.modulus
    M = lcm(chi.order, K)
    counts = {}
    for j, e in chi.values.items():
        x = (e * (M // chi.order) + j * (M // K)) % M
        counts[x] = counts.get(x, 0) + 1
    return sum_of_roots(M, counts)


def twist(f: QExp, phi: DirichletChar) -> QExp:
    """The series with coefficients a(n) phi(n)."""
    L = lcm(f.order or 1, phi.order)
    g = f.embed(L) if degree(L) > 1 else f
    out = {}
    for n, a in g.coeffs.items():
        e = phi.exponent(n)
        if e is None:
            continue
        z = root_of_unity(L, e * (L // phi.order))
        out[n] = a * z if degree(L) > 1 else a * z.to_rational()
    return QExp(f.weight, f.width, f.trunc, out, L)


def twist_via_strokes(f: QExp, phi: DirichletChar) -> QExp:
    """(1 / g(phi^-1)) * sum_{j coprime to K} phi(j)^-1 f|gamma^j.

    Only valid for primitive phi; imprimitive characters are rejected.
    """
    K = phi.modulus
    if not is_primitive(phi):
        raise InputError(
            f"character mod {K} has conductor {conductor(phi)}; the stroke formula"
            " needs a primitive character")
    inv = phi.inverse()
    g = gauss_sum(inv)
    if g.is_zero():
        raise IdentityFailure("Gauss sum of a primitive character vanished")
    M = lcm(f.order or 1, phi.order, K)
    total = None
    for j, e in sorted(inv.values.items()):
        term = qexp_scale(root_of_unity(M, e * (M // phi.order)), translate_stroke(f, j, K))
        total = term if total is None else qexp_add(total, term)
    result = qexp_scale(cyclo_inv(as_cyclo(g, M)), total)
    target = lcm(f.order or 1, phi.order)
    if degree(target) == 1:
        return result.descend()
    return result
