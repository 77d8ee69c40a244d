"""Enumerate every spanning tree of the four-diamond ring and tabulate
degree-2 patterns."""

import argparse
import collections
import time

from histree.certificates import has_three_consecutive_deg2, tree_degree_multiset
from histree.generators import gen_figure1
from histree.oracle import count_spanning_trees, for_each_spanning_tree, get_predicate


def main():
    argparse.ArgumentParser(description=__doc__).parse_args()
    g = gen_figure1()
    adjacent = get_predicate("adjacent-deg2-pair")
    stats = collections.Counter()
    histo = collections.Counter()

    def visit(t):
        stats["trees"] += 1
        stats["adjacent deg-2 pair"] += adjacent.test(g, t)
        stats["three consecutive deg-2"] += has_three_consecutive_deg2(t)
        histo[tuple(sorted(tree_degree_multiset(t).items()))] += 1

    start = time.perf_counter()
    res = for_each_spanning_tree(g, visit)
    print(f"enumeration: {res.count} trees ({res.status}) in {time.perf_counter() - start:.2f}s")
    print(f"kirchhoff:   {count_spanning_trees(g)}")
    for k, v in stats.items():
        print(f"{k:>26}: {v}")
    print("degree histograms (degree: count) -> trees")
    for h, c in histo.most_common():
        print(f"  {dict(h)} -> {c}")


if __name__ == "__main__":
    main()
