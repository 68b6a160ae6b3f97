"""Count 2-colourings of K_m without a monochromatic triangle, m = 3..6."""

import argparse
import time

from nablakit.ramsey import Exhausted, all_graph_colorings, find_mono_subset


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-m", type=int, default=6)
    args = ap.parse_args()
    for m in range(3, args.max_m + 1):
        start = time.perf_counter()
        total = free = 0
        for c in all_graph_colorings(m):
            total += 1
            free += isinstance(find_mono_subset(c, 3), Exhausted)
        print(f"K_{m}: {free} of {total} colourings avoid a monochromatic triangle "
              f"({time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
