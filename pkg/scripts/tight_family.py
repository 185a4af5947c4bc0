"""Build the tight instance for each m, solve it exactly and show LPT vs OPT."""

import argparse

from uniform_lpt.analysis import approx_ratio, rho
from uniform_lpt.certify import certify
from uniform_lpt.exact import opt_bnb
from uniform_lpt.lpt import lpt_schedule
from uniform_lpt.worstcase import GIS_RANGE, generate_gis_instance


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, nargs="*", default=list(range(2, 6)))
    parser.add_argument("--verbose", action="store_true", help="print both schedules")
    args = parser.parse_args()
    for m in args.m:
        if m not in GIS_RANGE:
            parser.error(f"m must be in {GIS_RANGE.start}..{GIS_RANGE.stop - 1}")
        inst = generate_gis_instance(m)
        rep = approx_ratio(inst)
        verdict = certify(inst).verdict
        print(f"m={m}  LPT={rep.lpt:.12f}  OPT={rep.opt:.12f}  ratio-rho={rep.ratio - rho(m):+.1e}  {verdict}")
        if args.verbose:
            lpt, opt = lpt_schedule(inst), opt_bnb(inst)
            for p, s in enumerate(inst.speeds):
                lpt_tasks = [i + 1 for i in lpt.tasks_on(p)]
                opt_tasks = [i + 1 for i in opt.tasks_on(p)]
                print(f"    p{p + 1} s={s:.6f}  LPT {lpt_tasks}  OPT {opt_tasks}")


if __name__ == "__main__":
    main()
