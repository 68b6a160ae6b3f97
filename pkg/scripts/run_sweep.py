"""Run an obstruction sweep and print one line per instance."""

import argparse
import json

from nablakit.obstruction import SizeLimits, sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--D", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--h", default="tower", help="tower, random or poly:<expr in s>")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="write the full report here")
    args = ap.parse_args()

    rep = sweep(args.n, args.D, args.sizes, args.h, seed=args.seed, limits=SizeLimits())
    for r in rep["instances"]:
        print(f"|S|={r['grid_size']} D={r['D']}: witness {str(r['witness']):8s} solver {str(r['solver']):10s} unknowns {r['unknowns']}")
    print(f"consistent: {rep['all_consistent']}  elapsed: {rep['elapsed']:.2f}s")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep, fh, indent=2, default=str)


if __name__ == "__main__":
    main()
