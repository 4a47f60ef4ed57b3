"""Print P(m) over a grid of (k, C, m) and confirm each against a direct scan."""
import argparse
from fractions import Fraction

from asdforge.asdcheck import threshold_holds, threshold_Pm


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--weights", default="2,3,4,12")
    ap.add_argument("--C", default="3/2,2,10")
    ap.add_argument("--m", default="1,2,6")
    ap.add_argument("--n1", type=int, default=0)
    ap.add_argument("--scan", type=int, default=1000, help="n checked past P")
    args = ap.parse_args()
    for k in map(int, args.weights.split(",")):
        for C in map(Fraction, args.C.split(",")):
            for m in map(int, args.m.split(",")):
                res = threshold_Pm(C, m, k, args.n1)
                ok = all(threshold_holds(C, m, k, n) for n in range(res.P + 1, res.P + args.scan))
                sharp = res.P == args.n1 + 1 or not threshold_holds(C, m, k, res.P)
                print(f"k={k:<3} C={str(C):<4} m={m:<2} P={res.P:<12} {res.binding:<10} "
                      f"{'ok' if ok and sharp else 'MISMATCH'}")


if __name__ == "__main__":
    main()
