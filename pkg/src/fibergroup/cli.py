"""Command-line interface: JSON reports on stdout, human summaries on stderr.

Exit codes: 0 all checks pass, 1 some check fails, 2 only unknowns besides
passes, 64 usage error, 66 unreadable input file.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

SCHEMA = "fibergroup.report/1"

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE, EXIT_NOINPUT = 0, 1, 2, 64, 66


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


@dataclass
class Check:
    name: str
    ref: str
    status: str
    payload: dict
    runtime_ms: float | None = None

    def as_dict(self, timing: bool) -> dict:
        out = {"name": self.name, "ref": self.ref, "status": self.status, "payload": self.payload}
        if timing:
            out["runtime_ms"] = round(self.runtime_ms or 0.0, 3)
        return out


@dataclass
class Report:
    command: list[str]
    checks: list[Check] = field(default_factory=list)
    timing: bool = True

    def run(self, name: str, ref: str, fn: Callable[[], tuple[str, dict]]) -> Check:
        t0 = time.perf_counter()
        status, payload = fn()
        c = Check(name, ref, status, payload, (time.perf_counter() - t0) * 1000)
        self.checks.append(c)
        return c

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if "fail" in states:
            return "fail"
        if "unknown" in states:
            return "unknown"
        return "pass"

    def exit_code(self) -> int:
        return {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unknown": EXIT_UNKNOWN}[self.status]

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "checks": [c.as_dict(self.timing) for c in self.checks],
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)


def _ok(flag: bool) -> str:
    return "pass" if flag else "fail"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


# subcommands -----------------------------------------------------------------


def cmd_enum(args, rep: Report) -> None:
    from .fpgroup import Complete, coset_enumerate, parse_presentation
    from .words import parse_word, split_top_level

    try:
        pres = parse_presentation(_read(args.file))
        subgroup = [parse_word(t, pres.names) for t in split_top_level(args.subgroup)] if args.subgroup else []
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    def run():
        table = coset_enumerate(pres, subgroup, max_cosets=args.max_cosets)
        st = table.status
        if isinstance(st, Complete):
            return "pass", {"verdict": "complete", "index": st.index, "cosets_used": table.cosets_used}
        return "unknown", {"verdict": "overflow", "max_cosets": st.max_cosets, "cosets_used": table.cosets_used}

    rep.run("coset enumeration", "coset-enumeration", run)


def _burnside_checks(rep: Report, n: int, order: bool, enum: bool, exponent_samples: int, seed: int, max_cosets: int):
    from .burnside3 import B3Element, b3_order, four_subset_exponent_check, random_element
    from .fpgroup import FAMILIES, Complete, coset_enumerate, bt_presentation

    if order:
        rep.run(f"B({n},3) order", "burnside-order", lambda: ("pass", {"n": n, "order": b3_order(n)}))
    if enum:
        family = {1: "basic", 2: "pairs"}.get(n, "triples")
        assert family in FAMILIES

        def run():
            st = coset_enumerate(bt_presentation(n, 3, family), max_cosets=max_cosets).status
            if isinstance(st, Complete):
                return _ok(st.index == b3_order(n)), {"family": family, "index": st.index, "expected": b3_order(n)}
            return "unknown", {"family": family, "verdict": "overflow", "max_cosets": st.max_cosets}

        rep.run(f"BT({n},3) enumeration", "burnside-order", run)
    if exponent_samples:
        def run():
            rng = random.Random(seed)
            bad = None
            for _ in range(exponent_samples):
                u = random_element(n, rng)
                if not (u * u * u).is_identity():
                    bad = str(u)
                    break
            gens = [B3Element.generator(n, i) for i in range(n)]
            v = four_subset_exponent_check(gens, exponent_samples, random.Random(seed))
            return _ok(bad is None and v.passed), {"samples": exponent_samples, "cube_failure": bad, "four_subset": v.as_dict()}

        rep.run(f"B({n},3) exponent", "burnside-exponent", run)


def cmd_burnside(args, rep: Report) -> None:
    if args.n < 1:
        raise UsageError("--n must be positive")
    order = args.order or not (args.enum or args.exponent)
    _burnside_checks(rep, args.n, order, args.enum, args.exponent, args.seed, args.max_cosets)


def cmd_nilpotent(args, rep: Report) -> None:
    from .nilpotent import (
        UCElement,
        closure_size,
        tree_extension_build,
        uc_element_order,
        uc_from_word,
        uc_order,
    )
    from .words import random_word, surface_relator

    if args.tree:
        try:
            genera = [int(x) for x in args.tree.split(",")]
            edges = [tuple(int(v) for v in e.split("-")) for e in args.edges.split(",")] if args.edges else []
        except ValueError as exc:
            raise UsageError(f"bad --tree/--edges: {exc}") from exc

        def run_tree():
            ext = tree_extension_build(genera, edges)
            zimgs = list(ext.z_cycle_images.values())
            zs = set(zimgs)
            nz_orders = sorted({x.order() for x in ext.nz_cycle_images})
            ok = ext.group.order() == 2 ** (1 + 2 * sum(genera)) and all(z.order() == 2 for z in zimgs)
            return _ok(ok and len(zs) <= 1), {
                "order": ext.group.order(),
                "z_cycle_images_equal": len(zs) <= 1,
                "z_cycle_orders": sorted({z.order() for z in zimgs}),
                "nz_cycle_orders": nz_orders,
            }

        rep.run("N=2 tree extension", "tree-extension", run_tree)
        return
    g, N = args.g, args.N
    if g < 1 or N < 2:
        raise UsageError("need --g >= 1 and --N >= 2")
    if N % 2 == 0:
        raise UsageError("the UC model needs odd N; use --tree for N = 2")
    if args.image:
        from .words import WordSyntaxError, parse_word, surface_names

        try:
            word = parse_word(args.image, surface_names(g))
        except WordSyntaxError as exc:
            raise UsageError(str(exc)) from exc

        def run_image():
            x = uc_from_word(word, g, N)
            return "pass", {**x.as_dict(), "order": uc_element_order(x)}

        rep.run("UC image", "uc-element-order", run_image)
        return
    rep.run(f"UC_{g}^{N} order", "uc-order", lambda: ("pass", {"g": g, "N": N, "order": uc_order(g, N)}))
    if args.closure:
        def run_closure():
            gens = [UCElement.generator(g, N, i) for i in range(2 * g)]
            size = closure_size(gens, UCElement.identity(g, N))
            return _ok(size == uc_order(g, N)), {"closure": size, "formula": uc_order(g, N)}

        rep.run(f"UC_{g}^{N} closure", "uc-order", run_closure)

    def run_words():
        rng = random.Random(args.seed)
        rel_ok = uc_from_word(surface_relator(g), g, N).is_identity()
        bad = None
        for _ in range(args.samples):
            w = random_word(2 * g, rng.randint(1, 12), rng)
            x = uc_from_word(w, g, N)
            if any(c % N for c in x.v) and uc_element_order(x) != N:
                bad = str(w)
                break
        return _ok(rel_ok and bad is None), {"surface_relator_trivial": rel_ok, "samples": args.samples, "failure": bad}

    rep.run(f"UC_{g}^{N} element orders", "uc-element-order", run_words)


def cmd_monodromy(args, rep: Report) -> None:
    from .monodromy import acts_trivially_mod, disjoint_product, random_disjoint_cycles, standard_twists, transvection
    from .words import abelianize_vector, random_word

    rng = random.Random(args.seed)
    Ns = [int(x) for x in args.N.split(",")]

    def run_laws():
        counts = {"symplectic": 0, "unipotent": 0, "mod_n": 0}
        for _ in range(args.trials):
            g = rng.randint(1, args.g)
            cycles = random_disjoint_cycles(g, rng.randint(1, g), rng)
            T = disjoint_product(cycles)
            counts["symplectic"] += T.is_symplectic()
            counts["unipotent"] += T.is_unipotent_of_step_two()
            counts["mod_n"] += all(acts_trivially_mod(T**N, N) for N in Ns)
        ok = all(v == args.trials for v in counts.values())
        return _ok(ok), {"trials": args.trials, "max_genus": args.g, "N": Ns, "passed": counts}

    rep.run("monodromy laws", "unipotent-monodromy", run_laws)

    def run_square():
        failures = []
        for g in range(1, min(args.g, 3) + 1):
            for tw in standard_twists(g):
                T = tw.abelianized()
                if T != transvection(tw.curve_class()):
                    failures.append(f"{tw.curve}@g{g}: matrix")
                for _ in range(args.words):
                    w = random_word(2 * g, rng.randint(0, 16), rng)
                    lhs = abelianize_vector(tw.apply(w))
                    rhs = [int(x) for x in T.m @ abelianize_vector(w)]
                    if lhs != rhs:
                        failures.append(f"{tw.curve}@g{g}: {w}")
                        break
        return _ok(not failures), {"words_per_twist": args.words, "failures": failures}

    rep.run("twist abelianization square", "twist-abelianization", run_square)


def cmd_fiberquot(args, rep: Report) -> None:
    from .fiberquot import OrbitBounds, analyze_quotient, parse_fiber_data

    try:
        data = parse_fiber_data(_read(args.file))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    oracles = [o.strip() for o in args.oracles.split(",") if o.strip()]
    bounds = OrbitBounds(args.max_relators, args.max_length, args.max_depth)

    def run():
        try:
            res = analyze_quotient(data, bounds, oracles, max_cosets=args.max_cosets)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        kind = res.verdict.kind
        status = "unknown" if kind == "Unknown" else "pass"
        return status, res.as_dict()

    rep.run("fiber quotient", "fiber-quotient", run)


def cmd_scan(args, rep: Report) -> None:
    from .shafarevich import component_hom, lemma41_scan, parse_factor, parse_scan_file, two_torus_chain

    if args.fixture:
        if args.fixture != "two-torus-chain":
            raise UsageError(f"unknown fixture {args.fixture!r}")
        data, graph, parts = two_torus_chain(punctured=not args.closed)
        factors = [parse_factor(args.factor), parse_factor(args.factor)]
        hom = component_hom(data, factors, [0, 1])
    elif args.file:
        try:
            data, graph, parts, hom = parse_scan_file(_read(args.file))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        raise UsageError("scan needs a file or --fixture")
    try:
        left, right = args.split.split("|")
        K1 = {int(x) for x in left.split(",")}
        K2 = {int(x) for x in right.split(",")}
    except ValueError as exc:
        raise UsageError(f"bad --split {args.split!r}; expected e.g. '0|1'") from exc

    def run():
        r = lemma41_scan(data, graph, K1, K2, parts, hom)
        status = "pass" if r.verdict == "CandidateCounterexample" else "unknown"
        return status, r.as_dict()

    rep.run("split scan", "split-scan", run)


def cmd_witness(args, rep: Report) -> None:
    from .witnesses import eisenstein_report, quaternion_report

    if not (args.quaternion or args.eisenstein):
        args.quaternion = args.eisenstein = True
    if args.quaternion:
        def run_q():
            r = quaternion_report(args.radius)
            ok = (
                r["generator_orders"] == [4, 4]
                and r["linear_group_size"] == 8
                and not r["sweep"]["failures"]
                and r["translation_witness"]["infinite_order_checked_to"] is not None
            )
            return _ok(ok), r

        rep.run("quaternion witness", "quaternion-witness", run_q)
    if args.eisenstein:
        def run_e():
            r = eisenstein_report(args.power_check)
            ok = r["g1_relators"]["passed"] and not r["ab2_cubed"]["passed"] and r["commutator_infinite_order_to"]
            return _ok(bool(ok)), r

        rep.run("eisenstein witness", "eisenstein-witness", run_e)


def cmd_verify_appendix_b(args, rep: Report) -> None:
    """The exponent-3 regression suite."""
    from .burnside3 import B3Element, four_subset_exponent_check, punctured_torus_presentation
    from .fpgroup import Complete, abelian_invariants, coset_enumerate, parse_presentation
    from .words import Word

    for n in (1, 2, 3):
        _burnside_checks(rep, n, True, True, 0, args.seed, args.max_cosets)

    g1 = parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3")
    g2 = parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3, (a b^2)^3")

    def run_g2():
        st = coset_enumerate(g2, max_cosets=args.max_cosets).status
        return _ok(isinstance(st, Complete) and st.index == 27), {"order": getattr(st, "index", None)}

    rep.run("G2 order", "g2-finite", run_g2)

    def run_g1():
        inv = abelian_invariants(g1)
        st = coset_enumerate(g1, max_cosets=min(args.max_cosets, 20000)).status
        return _ok(inv.free_rank == 0 and list(inv.torsion) == [3, 3] and not isinstance(st, Complete)), {
            "abelian_invariants": list(inv.torsion),
            "enumeration": "complete" if isinstance(st, Complete) else "overflow",
        }

    rep.run("G1 abelianization and enumeration", "g1-infinite", run_g1)

    args.radius, args.power_check = 6, 1000
    args.quaternion = args.eisenstein = True
    cmd_witness(args, rep)

    def run_four():
        gens = [B3Element.generator(3, i) for i in range(3)]
        good = four_subset_exponent_check(gens, 200, random.Random(args.seed))
        # a finite quotient of G1 where a cube survives: G1 + (a b^2)^9
        quot = parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3, (a b^2)^9")
        table = coset_enumerate(quot, max_cosets=args.max_cosets)
        if not table.complete:
            return "unknown", {"b33": good.as_dict(), "g1_quotient": "overflow"}
        perms = [[row[2 * i] for row in table.table] for i in range(2)]

        def mul(x, y):
            return tuple(y[c] for c in x)

        ident = tuple(range(len(table.table)))
        bad = four_subset_exponent_check([tuple(p) for p in perms], 200, random.Random(args.seed), mul, ident)
        return _ok(good.passed and not bad.passed), {
            "b33": good.as_dict(),
            "g1_quotient_order": len(ident),
            "g1_quotient": bad.as_dict(),
        }

    rep.run("four-subset exponent check", "four-subset", run_four)

    def run_kernel():
        p = punctured_torus_presentation()
        a, b = Word.generator(3, 0), Word.generator(3, 1)
        total = coset_enumerate(p, max_cosets=args.max_cosets).status
        sub = coset_enumerate(p, [a, b], max_cosets=args.max_cosets).status
        ok = isinstance(total, Complete) and isinstance(sub, Complete) and total.index == 2187 and sub.index == 81
        return _ok(ok), {"order": getattr(total, "index", None), "kernel_order": getattr(sub, "index", None)}

    rep.run("twice-punctured torus quotient", "kernel-order", run_kernel)


# parser ----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timing", action="store_true", help="omit runtimes so output is reproducible")
    common.add_argument("--max-cosets", type=int, default=10**5)

    p = _Parser(prog="fibergroup", description="fiber-group computations")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    s = sub.add_parser("enum", parents=[common], help="Todd-Coxeter on a presentation file")
    s.add_argument("file")
    s.add_argument("--subgroup", default="", help="comma separated subgroup generators")
    s.set_defaults(fn=cmd_enum)

    s = sub.add_parser("burnside", parents=[common], help="B(n,3) orders and exponent checks")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--order", action="store_true")
    s.add_argument("--enum", action="store_true", help="confirm the order by coset enumeration")
    s.add_argument("--exponent", type=int, default=0, metavar="SAMPLES")
    s.set_defaults(fn=cmd_burnside)

    s = sub.add_parser("nilpotent", parents=[common], help="UC_g^N and the N=2 tree extension")
    s.add_argument("--g", type=int, default=1)
    s.add_argument("--N", type=int, default=3)
    s.add_argument("--closure", action="store_true", help="brute-force closure from the generators")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--image", default="", help="report the image of one word")
    s.add_argument("--tree", default="", help="component genera, e.g. 1,1")
    s.add_argument("--edges", default="", help="edges, e.g. 0-1")
    s.set_defaults(fn=cmd_nilpotent)

    s = sub.add_parser("monodromy", parents=[common], help="twist monodromy laws")
    s.add_argument("--g", type=int, default=4)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--N", default="2,3,4,5,7")
    s.add_argument("--words", type=int, default=100)
    s.set_defaults(fn=cmd_monodromy)

    s = sub.add_parser("fiberquot", parents=[common], help="analyze a fiber-data file")
    s.add_argument("file")
    s.add_argument("--oracles", default="abelian,uc,enum")
    s.add_argument("--max-relators", type=int, default=10**4)
    s.add_argument("--max-length", type=int, default=512)
    s.add_argument("--max-depth", type=int, default=32)
    s.set_defaults(fn=cmd_fiberquot)

    s = sub.add_parser("scan", parents=[common], help="split scan over a dual graph")
    s.add_argument("file", nargs="?")
    s.add_argument("--split", default="0|1")
    s.add_argument("--fixture", default="", help="built-in fixture, e.g. two-torus-chain")
    s.add_argument("--factor", default="B(2,3)", help="factor group for the fixture")
    s.add_argument("--closed", action="store_true", help="use the closed fiber for the fixture")
    s.set_defaults(fn=cmd_scan)

    s = sub.add_parser("witness", parents=[common], help="affine infiniteness witnesses")
    s.add_argument("--quaternion", action="store_true")
    s.add_argument("--eisenstein", action="store_true")
    s.add_argument("--radius", type=int, default=6)
    s.add_argument("--power-check", type=int, default=1000)
    s.set_defaults(fn=cmd_witness)

    s = sub.add_parser("verify-appendix-b", parents=[common], help="exponent-3 regression suite")
    s.set_defaults(fn=cmd_verify_appendix_b)
    return p


def run(argv: list[str]) -> tuple[int, Report | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    rep = Report(list(argv), timing=not args.no_timing)
    try:
        args.fn(args, rep)
    except UsageError as exc:
        print(f"fibergroup: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except InputError as exc:
        print(f"fibergroup: {exc}", file=sys.stderr)
        return EXIT_NOINPUT, None
    return rep.exit_code(), rep


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, rep = run(argv)
    if rep is not None:
        print(rep.to_json())
        for c in rep.checks:
            print(f"[{c.status:>7}] {c.name}", file=sys.stderr)
        print(f"overall: {rep.status}", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
