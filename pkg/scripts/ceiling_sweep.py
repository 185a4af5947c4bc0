"""Random sampling plus hill climbing over a grid of (m, n); prints max ratio vs rho_m.

Writes one CSV row per configuration, so runs can be diffed across seeds.
"""

import argparse
import csv
import sys
import time

from uniform_lpt.worstcase import SearchConfig, ratio_ceiling_check, search_worst


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--extra", type=int, nargs="+", default=[1, 2, 3], help="n = m + extra")
    parser.add_argument("--samples", type=int, default=10_000)
    parser.add_argument("--restarts", type=int, default=100)
    parser.add_argument("--steps", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["m", "n", "sampled_max", "searched_max", "rho_m", "gap", "seconds"])
    for m in args.m:
        for extra in args.extra:
            n = m + extra
            start = time.perf_counter()
            sampled = ratio_ceiling_check(m, n, args.samples, seed=args.seed)
            searched = search_worst(SearchConfig(
                m=m, n_max=n, n_min=n, restarts=args.restarts, steps_per_restart=args.steps,
                seed=args.seed, seed_gis=True, workers=args.workers,
            ))
            best = max(sampled.max_ratio, searched.best_ratio)
            out.writerow([m, n, f"{sampled.max_ratio:.9f}", f"{searched.best_ratio:.9f}",
                          f"{sampled.bound:.9f}", f"{sampled.bound - best:.2e}",
                          f"{time.perf_counter() - start:.1f}"])
            sys.stdout.flush()


if __name__ == "__main__":
    main()
