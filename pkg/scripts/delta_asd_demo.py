"""Verify the ASD congruences for Delta against itself, then show that a
one-coefficient perturbation is caught.

    python scripts/delta_asd_demo.py --primes 2,3,5,7 --nmax 100
"""
import argparse
import time

from asdforge.asdcheck import asd_check_primes
from asdforge.characters import trivial_char
from asdforge.newform import delta_oracle, delta_prime_coeffs, delta_spec, extend_coefficients
from asdforge.qseries import QExp


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", default="2,3,5,7")
    ap.add_argument("--nmax", type=int, default=100)
    ap.add_argument("--bump", type=int, default=2, help="index to perturb by +1")
    args = ap.parse_args()
    primes = [int(p) for p in args.primes.split(",")]

    t0 = time.perf_counter()
    d = delta_oracle(args.nmax * max(primes))
    b = extend_coefficients(delta_spec(delta_prime_coeffs(d)), max(primes))
    rep = asd_check_primes(d, b, trivial_char(1), 12, primes, args.nmax)
    print(f"Delta vs Delta: {rep.summary()} in {time.perf_counter() - t0:.2f}s")

    bad = d + QExp(12, 1, d.trunc, {args.bump: 1})
    rep = asd_check_primes(bad, b, trivial_char(1), 12, primes, args.nmax)
    print(f"a({args.bump}) + 1: {rep.summary()}")
    for v in rep.failures[:5]:
        print(f"  p={v.p} n={v.n} lhs={v.lhs} v_p={v.achieved} < {v.required}")


if __name__ == "__main__":
    main()
