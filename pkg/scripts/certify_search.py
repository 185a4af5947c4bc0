"""Hill-climb at n = m + 2 and certify the best instances found.

Reports which necessary condition rules out each candidate, which is the
numerical shadow of the n = m + 2 non-minimality result.
"""

import argparse
from collections import Counter

from uniform_lpt.analysis import rho
from uniform_lpt.certify import certify
from uniform_lpt.worstcase import SearchConfig, search_worst


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="+", default=[3, 4, 5])
    parser.add_argument("--restarts", type=int, default=50)
    parser.add_argument("--seeds", type=int, default=5)
    args = parser.parse_args()
    for m in args.m:
        failures = Counter()
        best = 0.0
        for seed in range(args.seeds):
            res = search_worst(SearchConfig(m=m, n_max=m + 2, n_min=m + 2, restarts=args.restarts, seed=seed))
            report = certify(res.best_instance)
            best = max(best, res.best_ratio)
            failures.update(report.failed or ("none",))
        summary = ", ".join(f"{k}: {v}" for k, v in failures.most_common())
        print(f"m={m} n={m + 2} best={best:.6f} rho_m={rho(m):.6f}  failed conditions: {summary}")


if __name__ == "__main__":
    main()
