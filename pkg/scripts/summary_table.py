"""Side-by-side summary table for several graphs, plus pairwise overlap counts.

    python3 scripts/summary_table.py skitter=skitter.txt bgp=bgp.txt whois=whois.txt [-o table.tsv]

Inputs are canonical or two-column edge lists. With no arguments the script
runs on two small synthetic graphs so it can be tried without data.
"""
import argparse
import itertools
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from astopo.graph import read_graph
from astopo.ingest import overlap_stats
from astopo.report import ROWS, summary
from astopo.series import fmt


def _synthetic():
    from graphs import power_lawish

    return {"plaw_a": power_lawish(2000, 6000, 1), "plaw_b": power_lawish(2000, 6000, 2)}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("graphs", nargs="*", metavar="LABEL=PATH")
    ap.add_argument("-o", "--output")
    args = ap.parse_args(argv)

    graphs = dict(s.split("=", 1) for s in args.graphs)
    graphs = {k: read_graph(v) for k, v in graphs.items()} if graphs else _synthetic()

    stats = {}
    for label, g in graphs.items():
        t0 = time.perf_counter()
        stats[label] = summary(g)
        print(f"{label}: n={g.n} m={g.m} ({time.perf_counter() - t0:.1f} s)", file=sys.stderr)

    lines = ["metric\t" + "\t".join(stats)]
    for key, name in ROWS:
        vals = [getattr(s, key) for s in stats.values()]
        lines.append(name + "\t" + "\t".join("-" if v is None else fmt(v) for v in vals))
    for a, b in itertools.combinations(graphs, 2):
        lines.append(f"# overlap\t{a}\t{b}")
        lines += [f"{k}\t{v}" for k, v in overlap_stats(graphs[a], graphs[b]).rows()]
    text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


if __name__ == "__main__":
    main()
