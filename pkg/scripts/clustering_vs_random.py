"""Observed clustering against the 0K/1K closed forms and a 2K Monte Carlo estimate.

    python3 scripts/clustering_vs_random.py [graph.txt] --samples 10
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from astopo import dk
from astopo.graph import read_graph


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graph", nargs="?")
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args(argv)

    if args.graph:
        g = read_graph(args.graph)
    else:
        from graphs import power_lawish
        g = power_lawish(3000, 9000, 4)

    cmp = dk.clustering_vs_randomness(g, dk.DkModelSpec("2k", g, args.rng_seed, samples=args.samples))
    print(f"observed mean C\t{cmp.observed_mean:.5g}")
    print(f"2K mean C\t{cmp.c2k_mean:.5g} +- {cmp.c2k_mean_std:.2g}\t(ratio {cmp.ratio_2k:.3g})")
    print(f"C_0K\t{cmp.c0k:.5g}")
    print(f"C_1K\t{cmp.c1k:.5g}")
    print("k\tC_observed\tC_2K")
    for k, c in cmp.observed_by_degree.items():
        print(f"{k}\t{c:.5g}\t{cmp.c2k_by_degree.get(k, float('nan')):.5g}")


if __name__ == "__main__":
    main()
