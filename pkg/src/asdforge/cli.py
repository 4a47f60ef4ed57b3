"""``asd-forge`` command line.

Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 bad input
or usage.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from sympy import isprime

from . import __version__
from .asdcheck import (
    AsdReport,
    asd_check,
    lemma1_verify,
    lemma2_verify,
    product_identity_check,
    threshold_Pm,
)
from .characters import gauss_sum, twist, twist_via_strokes
from .denomscan import denominator_profile
from .exactnum import InputError, cyclo_conj, cyclo_to_json, rat_from_str, rat_to_str
from .formats import (
    char_to_json,
    load_char,
    load_newform,
    load_qexp,
    newform_to_json,
    qexp_to_json,
    sequence_to_json,
    write_json,
)
from .newform import delta_oracle, delta_prime_coeffs, delta_spec, extend_coefficients, selberg_fit
from .qseries import IdentityFailure, qexp_equal, subseries, subseries_via_strokes

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    subcommand: str
    inputs: dict = field(default_factory=dict)
    nmax: Optional[int] = None
    primes: Optional[list] = None
    n1: Optional[int] = None
    char: Optional[str] = None
    out: Optional[str] = None
    window: Optional[int] = None
    extra: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _primes(text: str) -> list:
    try:
        ps = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad prime list {text!r}") from None
    bad = [p for p in ps if not isprime(p)]
    if bad or not ps:
        raise InputError(f"not prime: {bad}" if bad else "empty prime list")
    return sorted(set(ps))


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"bad integer list {text!r}") from None


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("ASDFORGE_WORKERS", "1")))
    except ValueError:
        raise InputError("ASDFORGE_WORKERS must be an integer") from None


def _emit(cfg: RunConfig, body: dict):
    text = write_json({"config": asdict(cfg), **body}, cfg.out)
    if cfg.out in (None, "-"):
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------------

def cmd_delta(args) -> int:
    f = delta_oracle(args.nmax)
    write_json(qexp_to_json(f), args.out)
    if args.newform_out:
        write_json(newform_to_json(delta_spec(delta_prime_coeffs(f))), args.newform_out)
    return EXIT_OK


def cmd_hecke_extend(args) -> int:
    spec = load_newform(args.newform, args.sidecar)
    b = extend_coefficients(spec, args.nmax)
    write_json(sequence_to_json(b, spec), args.out)
    return EXIT_OK


def _asd_one(job):
    return asd_check(*job)


def cmd_asd_check(args) -> int:
    primes = _primes(args.primes)
    a = load_qexp(args.form)
    spec = load_newform(args.newform, args.sidecar)
    b = extend_coefficients(spec, max(primes))
    cfg = RunConfig("asd-check", {"form": args.form, "newform": args.newform},
                    nmax=args.nmax, primes=primes, n1=args.n1, out=args.out,
                    extra={"weight": spec.weight, "workers": _workers()})
    jobs = [(a, b, spec.character, spec.weight, p, args.nmax, args.n1) for p in primes]
    if _workers() > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(_workers()) as pool:
            parts = list(pool.map(_asd_one, jobs))
    else:
        parts = [_asd_one(j) for j in jobs]
    report = AsdReport()
    for part in parts:
        report.extend(part)
    failures = [v.to_json() for v in report.failures if not v.advisory]
    _emit(cfg, {"summary": report.summary(), "ok": report.ok,
                "failures": failures,
                "verdicts": [v.to_json() for v in report.verdicts]})
    if not report.ok:
        w = failures[0]
        print(f"ASD congruence fails at p={w['p']}, n={w['n']}: lhs={w['lhs']}, "
              f"v_p={w['achieved']} < {w['required']}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def _compare_or_emit(cfg: RunConfig, method: str, direct, strokes) -> int:
    if method == "both":
        f, g = direct(), strokes()
        equal = qexp_equal(f, g)
        print("EQUAL" if equal else "DIFFERENT")
        if cfg.out:
            _emit(cfg, {"verdict": "EQUAL" if equal else "DIFFERENT"})
        return EXIT_OK if equal else EXIT_FAIL
    result = direct() if method == "direct" else strokes()
    text = write_json(qexp_to_json(result), cfg.out)
    if cfg.out in (None, "-"):
        sys.stdout.write(text)
    return EXIT_OK


def cmd_twist(args) -> int:
    f = load_qexp(args.form)
    phi = load_char(args.char)
    cfg = RunConfig("twist", {"form": args.form}, char=args.char, out=args.out,
                    extra={"method": args.method})
    return _compare_or_emit(cfg, args.method, lambda: twist(f, phi),
                            lambda: twist_via_strokes(f, phi))


def cmd_subseries(args) -> int:
    f = load_qexp(args.form)
    if args.K < 1:
        raise InputError("--K must be positive")
    cfg = RunConfig("subseries", {"form": args.form}, out=args.out,
                    extra={"K": args.K, "method": args.method})
    return _compare_or_emit(cfg, args.method, lambda: subseries(f, args.K),
                            lambda: subseries_via_strokes(f, args.K))


def cmd_gauss(args) -> int:
    chi = load_char(args.char)
    g = gauss_sum(chi)
    g_inv = gauss_sum(chi.inverse())
    norm = g * cyclo_conj(g)
    prod = g * g_inv
    cfg = RunConfig("gauss", char=args.char, out=args.out)
    _emit(cfg, {"character": char_to_json(chi), "gauss_sum": cyclo_to_json(g),
                "norm": _scalar(norm), "product_with_inverse": _scalar(prod)})
    return EXIT_OK


def _scalar(x):
    return rat_to_str(x.to_rational()) if x.is_rational() else cyclo_to_json(x)


def cmd_denom(args) -> int:
    f = load_qexp(args.form)
    primes = "auto" if args.primes == "auto" else _primes(args.primes)
    nmax = args.nmax or f.trunc
    rep = denominator_profile(f, nmax, primes, args.window)
    cfg = RunConfig("denom", {"form": args.form}, nmax=nmax,
                    primes=None if primes == "auto" else primes, out=args.out,
                    window=args.window, extra={"primes_mode": args.primes})
    _emit(cfg, {
        "classification": rep.classification,
        "growth_prime": rep.growth_prime,
        "tested_range": [1, nmax],
        "c_candidate": str(rep.c_candidate),
        "running_lcm": [str(x) for x in rep.running_lcm],
        "witnesses": {str(p): w for p, w in rep.witnesses.items()},
        "profiles": {str(p): v for p, v in rep.profiles.items()},
    })
    return EXIT_OK if rep.bounded else EXIT_FAIL


def cmd_selberg(args) -> int:
    f = load_qexp(args.form)
    C = rat_from_str(args.C) if args.C is not None else None
    fit = selberg_fit(f, args.nmax or f.trunc, C)
    cfg = RunConfig("selberg", {"form": args.form}, nmax=fit.nmax, out=args.out,
                    extra={"C": args.C})
    _emit(cfg, {
        "exponent": rat_to_str(fit.exponent),
        "n_star": fit.n_star,
        "abs_a_n_star": rat_to_str(fit.abs_a),
        "ratio_pair": [rat_to_str(fit.abs_a), fit.n_star],
        "ratio_tenth_power": rat_to_str(fit.ratio10),
        "ratio_approx": fit.ratio_float,
        "C": args.C,
        "holds": fit.holds,
    })
    return EXIT_FAIL if fit.holds is False else EXIT_OK


def cmd_threshold(args) -> int:
    C = rat_from_str(args.c)
    res = threshold_Pm(C, args.m, args.weight, args.n1)
    cfg = RunConfig("threshold", n1=args.n1, out=args.out,
                    extra={"C": args.c, "m": args.m, "weight": args.weight})
    _emit(cfg, {"P": res.P, "analytic": res.analytic, "binding": res.binding,
                "A_m": {"base": res.m, "exponent": rat_to_str(res.a_exponent)}})
    return EXIT_OK


def cmd_lemma(args) -> int:
    a = load_qexp(args.form)
    m = args.m
    if m < 1:
        raise InputError("--m must be positive")
    cfg = RunConfig("lemma", {"form": args.form, "newform": args.newform}, out=args.out,
                    extra={"which": args.which, "m": m, "p": args.p, "primes": args.primes,
                           "emax": args.emax, "exponents": args.exponents})
    if args.which == "product":
        if not args.primes or not args.exponents:
            raise InputError("--which product needs --primes and --exponents")
        rep = product_identity_check(a, m, _primes_ordered(args.primes), _ints(args.exponents))
    else:
        if args.newform is None or args.emax is None:
            raise InputError(f"--which {args.which} needs --newform and --emax")
        spec = load_newform(args.newform, args.sidecar)
        reach = max(1, a.trunc // m)
        if args.which == "1":
            if args.p is None:
                raise InputError("--which 1 needs --p")
            b = extend_coefficients(spec, min(reach, args.p ** args.emax))
            rep = lemma1_verify(a, b, spec.character, m, args.p, args.emax)
        else:
            if not args.primes:
                raise InputError("--which 2 needs --primes")
            ps = _primes_ordered(args.primes)
            b = extend_coefficients(spec, min(reach, max(ps) ** args.emax))
            rep = lemma2_verify(a, b, m, ps, args.emax)
    _emit(cfg, rep.to_json())
    return EXIT_OK if rep.passed else EXIT_FAIL


def _primes_ordered(text: str) -> list:
    ps = _ints(text)
    bad = [p for p in ps if not isprime(p)]
    if bad or not ps:
        raise InputError(f"not prime: {bad}" if bad else "empty prime list")
    return ps


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="asd-forge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("delta", help="write the q-expansion of Delta")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--newform-out", help="also write Delta's newform spec here")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("hecke-extend", help="extend b(p) to b(1..nmax)")
    p.add_argument("--newform", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_hecke_extend)

    p = sub.add_parser("asd-check", help="check the ASD congruences")
    p.add_argument("--form", required=True)
    p.add_argument("--newform", required=True)
    p.add_argument("--sidecar")
    p.add_argument("--primes", required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--n1", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asd_check)

    for name, func in (("twist", cmd_twist), ("subseries", cmd_subseries)):
        p = sub.add_parser(name)
        p.add_argument("--form", required=True)
        if name == "twist":
            p.add_argument("--char", required=True)
        else:
            p.add_argument("--K", type=int, required=True)
        p.add_argument("--method", choices=("direct", "strokes", "both"), default="both")
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("gauss", help="Gauss sum of a character")
    p.add_argument("--char", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gauss)

    p = sub.add_parser("denom", help="denominator profile")
    p.add_argument("--form", required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--primes", default="auto")
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_denom)

    p = sub.add_parser("selberg", help="fit |a(n)| < C n^(k/2-1/5)")
    p.add_argument("--form", required=True)
    p.add_argument("--nmax", type=int)
    p.add_argument("--C")
    p.add_argument("--out")
    p.set_defaults(func=cmd_selberg)

    p = sub.add_parser("threshold", help="the constant P(m)")
    p.add_argument("--c", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--n1", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("lemma", help="coefficient identities for large primes")
    p.add_argument("--which", choices=("1", "2", "product"), required=True)
    p.add_argument("--form", required=True)
    p.add_argument("--newform")
    p.add_argument("--sidecar")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--p", type=int)
    p.add_argument("--primes")
    p.add_argument("--emax", type=int)
    p.add_argument("--exponents")
    p.add_argument("--out")
    p.set_defaults(func=cmd_lemma)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except IdentityFailure as exc:
        print(f"asd-forge: identity failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (InputError, ValueError, TypeError, KeyError, OSError, ArithmeticError,
            RecursionError) as exc:
        print(f"asd-forge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
