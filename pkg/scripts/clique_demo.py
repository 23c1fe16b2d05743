#!/usr/bin/env python3
"""Evaluate the composed 6-clique expression on a few graphs.

The expression uses only the two variables x1, x2 but detects 6-cliques,
because composition lets it pass information through a third copy of the
universe.  Compare its verdict with a brute-force search.
"""

import argparse
import random

from lif.constructions import CliqueSpec, build_alpha_exists_3n, complete_graph, make_graph
from lif.semantics import evaluate
from lif.suites import random_graph
from lif.syntax import render


def verdict(expr, spec, g):
    return bool(evaluate(expr, g.interpretation(spec.relation), spec.universe, g.domain))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--random", type=int, default=10, help="number of random graphs")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", action="store_true", help="print the expression")
    args = ap.parse_args()

    spec = CliqueSpec(n=2)
    expr = build_alpha_exists_3n(spec)
    if args.show:
        print(render(expr), end="\n\n")

    k6 = complete_graph(6)
    graphs = [
        ("K6", k6),
        ("K6 minus {1,2}", make_graph(k6.vertices, [tuple(e) for e in k6.edges if e != frozenset((1, 2))])),
        ("K7", complete_graph(7)),
    ]
    rng = random.Random(args.seed)
    graphs += [(f"random #{i}", random_graph(rng)) for i in range(args.random)]

    agree = 0
    for label, g in graphs:
        got, want = verdict(expr, spec, g), g.has_clique(6)
        agree += got == want
        print(f"{label:16s} |V|={len(g.vertices)} |E|={len(g.edges):2d}  expression={got!s:5s} brute force={want}")
    print(f"agreement: {agree}/{len(graphs)}")


if __name__ == "__main__":
    main()
