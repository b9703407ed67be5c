"""Orders of Burnside-type quotients by coset enumeration, against 3^(n + C(n,2) + C(n,3)).

    python scripts/burnside_orders.py            # n = 1..3
    python scripts/burnside_orders.py --max-n 4  # B(4,3) has 3^14 elements; slow and memory hungry
    python scripts/burnside_orders.py --all-families  # smaller families overflow (those groups are infinite)
"""

import argparse
import time

from fibergroup.burnside3 import b3_order
from fibergroup.fpgroup import FAMILIES, Complete, bt_presentation, coset_enumerate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--max-cosets", type=int, default=2 * 10**6)
    ap.add_argument("--all-families", action="store_true")
    args = ap.parse_args()
    print(f"{'n':>2} {'family':>8} {'verdict':>22} {'expected':>10} {'sec':>7}")
    for n in range(1, args.max_n + 1):
        for fam in FAMILIES:
            if fam == "pairs" and n < 2 or fam == "triples" and n < 3:
                continue
            largest = FAMILIES[min(n, 3) - 1]
            if not args.all_families and fam != largest:
                continue
            t0 = time.perf_counter()
            st = coset_enumerate(bt_presentation(n, 3, fam), max_cosets=args.max_cosets).status
            verdict = f"Complete({st.index})" if isinstance(st, Complete) else f"Overflow({st.max_cosets})"
            print(f"{n:>2} {fam:>8} {verdict:>22} {b3_order(n):>10} {time.perf_counter() - t0:7.2f}")


if __name__ == "__main__":
    main()
