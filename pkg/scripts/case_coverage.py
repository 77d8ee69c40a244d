"""Sweep random gadget hosts through find_structure and count case leaves."""

import argparse
import collections
import random
import time

from histree.errors import GraphError, InternalBugError
from histree.generators import gen_random_gadget_host
from histree.reduction_engine import case_tree_leaves, find_structure


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--min-k", type=int, default=8)
    ap.add_argument("--max-k", type=int, default=22)
    args = ap.parse_args()

    counts = collections.Counter()
    first = {}
    bugs = 0
    start = time.perf_counter()
    for seed in range(args.start, args.start + args.count):
        rng = random.Random(seed)
        k = rng.randint(args.min_k, args.max_k)
        dv = rng.randint(3, 8)
        if (dv + 4 + 3 * (k - 3)) % 2:
            k += 1
        try:
            g, v = gen_random_gadget_host(k, dv, seed)
        except GraphError:
            continue
        s = {u for u in range(g.n) if g.degree(u) >= 4} | {v}
        try:
            leaf = find_structure(g, s).trace[-1]
        except InternalBugError as exc:
            bugs += 1
            print(f"internal bug: seed={seed} k={k} dv={dv}: {exc}")
            continue
        counts[leaf] += 1
        first.setdefault(leaf, (seed, k, dv))
    print(f"{sum(counts.values())} instances, {bugs} internal bugs, "
          f"{time.perf_counter() - start:.1f}s")
    for leaf in case_tree_leaves():
        where = first.get(leaf)
        seen = f"first at seed={where[0]} k={where[1]} dv={where[2]}" if where else "not reached"
        print(f"{leaf:<26} {counts[leaf]:>7}  {seen}")


if __name__ == "__main__":
    main()
