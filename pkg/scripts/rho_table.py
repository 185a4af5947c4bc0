"""Print rho_m next to the identical-speed and GIS bounds, with residuals."""

import argparse

from uniform_lpt.analysis import char_poly, gis_bound, graham_bound, rho


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-m", type=int, default=10)
    args = parser.parse_args()
    print(f"{'m':>3}  {'rho_m':>18}  {'|P_m(rho_m)|':>12}  {'4/3-1/(3m)':>10}  {'2m/(m+1)':>10}")
    for m in range(1, args.max_m + 1):
        r = rho(m)
        print(f"{m:>3}  {r:>18.16f}  {abs(char_poly(m)(r)):>12.1e}  {graham_bound(m):>10.6f}  {gis_bound(m):>10.6f}")


if __name__ == "__main__":
    main()
