"""Growth of truncated monodromy orbits of a vanishing-cycle relator.

For each depth bound, report the number of orbit relators and the longest
one.  Twists along a_1 and b_1 generate an infinite orbit, so the count grows
without a fixed point.
"""

import argparse

from fibergroup.fiberquot import Cycle, FiberData, OrbitBounds, orbit_closure
from fibergroup.monodromy import twist_automorphism
from fibergroup.words import parse_word, surface_names


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", type=int, default=2)
    ap.add_argument("--curves", default="a1,b1")
    ap.add_argument("--cycle", default="a1")
    ap.add_argument("--N", type=int, default=3)
    ap.add_argument("--max-depth", type=int, default=6)
    args = ap.parse_args()
    mono = tuple(twist_automorphism(args.g, c) for c in args.curves.split(","))
    data = FiberData(args.g, mono, (Cycle(parse_word(args.cycle, surface_names(args.g)), args.N),))
    print("depth relators longest exhausted")
    for d in range(1, args.max_depth + 1):
        o = orbit_closure(data, OrbitBounds(max_depth=d))
        print(f"{d:5d} {len(o.relators):8d} {max(len(r) for r in o.relators):7d} {o.exhausted!s:>9}")


if __name__ == "__main__":
    main()
