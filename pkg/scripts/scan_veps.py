"""Scan c2_min / c2_max bounds for V_eps over a rational grid and write CSV to stdout.

    python scripts/scan_veps.py --start 1/50 --stop 49/100 --step 1/100
"""

import argparse
import csv
import sys
from fractions import Fraction

from toricap.bounds import veps_analysis
from toricap.domains import make_veps
from toricap.packing import embed_concave_into_ball


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--start", type=Fraction, default=Fraction(1, 50))
    parser.add_argument("--stop", type=Fraction, default=Fraction(49, 100))
    parser.add_argument("--step", type=Fraction, default=Fraction(1, 100))
    args = parser.parse_args(argv)

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["eps", "c2_min", "c2_max_lower", "c2_max_upper", "equal", "embeds_at_3eps", "regime"])
    eps = args.start
    while eps <= args.stop:
        rep = veps_analysis(eps)
        verdict = embed_concave_into_ball(make_veps(eps), 3 * eps).verdict
        writer.writerow([eps, rep.c2_min, rep.c2_max_lower, rep.c2_max_upper or "",
                         rep.equal, verdict, rep.regime])
        eps += args.step


if __name__ == "__main__":
    main()
