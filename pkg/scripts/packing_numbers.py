"""Smallest ball B(mu) holding N equal unit balls, by bisection over Cremona reduction."""

import argparse
from fractions import Fraction

from toricap.packing import PackingInstance, ech_feasible, minimal_mu


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=9)
    parser.add_argument("--resolution", type=Fraction, default=Fraction(1, 1000))
    parser.add_argument("--horizon", type=int, default=200, help="ECH cross-check horizon")
    args = parser.parse_args(argv)

    print("N,mu,density,ech_check")
    for n in range(1, args.max_n + 1):
        mu = minimal_mu([1] * n, args.resolution)
        ech = ech_feasible(PackingInstance(mu, (1,) * n), args.horizon)
        # volume filled by the unit balls, as a fraction of B(mu)
        print(f"{n},{mu},{Fraction(n) / mu**2},{ech.verdict}")


if __name__ == "__main__":
    main()
