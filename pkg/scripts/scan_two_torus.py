"""Split scan of the two-torus chain for open and closed fibers and two factor choices.

The closed fiber keeps the surface relator, which B(2,3) * B(2,3) cannot
kill; its abelian handle quotients Z3^2 * Z3^2 can.
"""

import json

from fibergroup.shafarevich import AbelianFactor, BurnsideFactor, component_hom, lemma41_scan, two_torus_chain


def main():
    rows = []
    for punctured in (True, False):
        data, graph, parts = two_torus_chain(punctured)
        for factor in (BurnsideFactor(2), AbelianFactor(3, 2)):
            rep = lemma41_scan(data, graph, {0}, {1}, parts, component_hom(data, [factor, factor], [0, 1]))
            gate = rep.union["gate"]
            rows.append(
                {
                    "fiber": "open" if punctured else "closed",
                    "factors": f"{factor.name} * {factor.name}",
                    "verdict": rep.verdict,
                    "failing": gate["failing"]["relator"] if gate["failing"] else None,
                }
            )
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
