"""Print where c_k^min and c_k^max of a polydisk provably differ, for a range of k and n."""

import argparse

from toricap.bounds import highdim_veps_threshold, polydisk_gap


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-k", type=int, default=8)
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args(argv)

    ns = range(2, args.max_n + 1)
    print("k\\n " + " ".join(f"{n:>3}" for n in ns))
    for k in range(1, args.max_k + 1):
        print(f"{k:>3} " + " ".join(f"{'gap' if polydisk_gap(k, n).gap_proven else '.':>3}" for n in ns))
    print()
    for n in ns:
        print(f"n = {n}: V_eps gap for eps < {highdim_veps_threshold(n)}")


if __name__ == "__main__":
    main()
