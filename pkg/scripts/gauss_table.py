"""Tabulate g(phi) g(phi^-1) against phi(-1) K for every primitive character
of modulus K up to --kmax."""
import argparse
from fractions import Fraction

from asdforge.characters import char_eval, gauss_sum, primitive_characters
from asdforge.exactnum import rat_to_str


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kmax", type=int, default=12)
    args = ap.parse_args()
    print(f"{'K':>3} {'order':>5} {'g*g_inv':>8} {'phi(-1)K':>8}  ok")
    bad = 0
    for K in range(1, args.kmax + 1):
        for phi in primitive_characters(K):
            prod = gauss_sum(phi) * gauss_sum(phi.inverse())
            sign = char_eval(phi, -1)
            sign = sign if isinstance(sign, Fraction) else sign.to_rational()
            ok = prod.is_rational() and prod.to_rational() == sign * K
            bad += not ok
            val = rat_to_str(prod.to_rational()) if prod.is_rational() else "?"
            print(f"{K:>3} {phi.order:>5} {val:>8} {rat_to_str(sign * K):>8}  {'yes' if ok else 'NO'}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
