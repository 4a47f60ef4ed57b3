"""Contrast denominator profiles: Delta, n/24, and 1/2^n."""
from fractions import Fraction

from asdforge.denomscan import clear_denominators, denominator_profile
from asdforge.newform import delta_oracle
from asdforge.qseries import QExp


def main():
    N = 60
    cases = {
        "Delta": delta_oracle(N),
        "n/24": QExp.from_list([Fraction(n, 24) for n in range(1, N + 1)], weight=12),
        "1/2^n": QExp.from_list([Fraction(1, 2 ** n) for n in range(1, N + 1)], weight=12),
    }
    for name, f in cases.items():
        rep = denominator_profile(f)
        wit = {p: w[:6] for p, w in rep.witnesses.items()}
        print(f"{name:<6} {rep.classification:<16} c={rep.c_candidate} witnesses={wit}")
    _, integral = clear_denominators(cases["n/24"], 24)
    print(f"24 * (n/24) integral up to {N}: {integral}")


if __name__ == "__main__":
    main()
