"""Fiber groups of base-changed families.

Given a genus ``g``, generators of a monodromy group acting on ``pi_g`` and
vanishing cycles ``s_i`` with exponents ``N_i``, the fiber group is ``pi_g``
modulo the normal closure of the orbits ``M . s_i^{N_i}``.  Orbits are
enumerated by BFS up to explicit bounds; truncation is reported, never
hidden.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .fpgroup import (
    AbelianInvariants,
    Complete,
    Presentation,
    abelian_invariants,
    coset_enumerate,
)
from .monodromy import TwistAutomorphism, preserves_relator, twist_automorphism
from .words import (
    CyclicWord,
    Word,
    apply_map,
    cyclic_normal_form,
    cyclic_sort_key,
    format_word,
    parse_word,
    surface_names,
    surface_relator,
)


@dataclass(frozen=True)
class ExplicitAutomorphism:
    """Automorphism of ``pi_g`` given by generator images."""

    g: int
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...] | None = None
    name: str = "explicit"

    def apply(self, w: Word) -> Word:
        return apply_map(w, self.images)

    def apply_inverse(self, w: Word) -> Word:
        if self.inverse_images is None:
            raise ValueError(f"automorphism {self.name} has no inverse images")
        return apply_map(w, self.inverse_images)


def separating_twist(g: int, handles: int = 1) -> ExplicitAutomorphism:
    """Twist along the curve cutting off the first ``handles`` handles.

    It conjugates those generators by ``c = [a_1,b_1]...[a_h,b_h]`` and fixes
    the rest.
    """
    if not 1 <= handles < g:
        raise ValueError("need 1 <= handles < g for a separating curve")
    rank = 2 * g
    gens = [Word.generator(rank, i) for i in range(rank)]
    c = Word.identity(rank)
    for i in range(handles):
        a, b = gens[2 * i], gens[2 * i + 1]
        c = c * a * b * a.inverse() * b.inverse()
    fwd = [c * x * c.inverse() if k < 2 * handles else x for k, x in enumerate(gens)]
    back = [c.inverse() * x * c if k < 2 * handles else x for k, x in enumerate(gens)]
    return ExplicitAutomorphism(g, tuple(fwd), tuple(back), f"sep({handles})")


@dataclass(frozen=True)
class Cycle:
    word: Word
    N: int
    fiber_id: int = 0


@dataclass(frozen=True)
class FiberData:
    """Abstract fiber invariant ``(g, M, {(s_i, N_i)})``.

    ``punctured`` selects the open fiber (one puncture): its fundamental
    group is free on the ``a_i, b_i`` and the surface relator is dropped.
    """

    g: int
    monodromy_gens: tuple = ()
    cycles: tuple[Cycle, ...] = ()
    punctured: bool = False

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("genus must be positive")
        for m in self.monodromy_gens:
            if m.g != self.g:
                raise ValueError(f"monodromy generator {getattr(m, 'name', m)} has genus {m.g}")
            imgs = m.images
            if not preserves_relator(imgs, self.g):
                raise ValueError(f"monodromy generator {getattr(m, 'name', getattr(m, 'curve', '?'))} "
                                 "does not preserve the surface relator")
        for c in self.cycles:
            if c.word.rank != 2 * self.g:
                raise ValueError("cycle word has the wrong rank")
            if c.word.is_identity():
                raise ValueError("cycle words must be nontrivial")
            if c.N < 1:
                raise ValueError("exponents must be positive")

    @property
    def rank(self) -> int:
        return 2 * self.g

    def names(self) -> list[str]:
        return surface_names(self.g)


def local_relators(s: Word, N: int) -> CyclicWord:
    """Cyclic normal form (up to inversion) of ``s^N``."""
    if s.is_identity():
        raise ValueError("s must be nontrivial")
    return cyclic_normal_form(s**N, up_to_inverse=True)


@dataclass(frozen=True)
class OrbitBounds:
    max_relators: int = 10**4
    max_word_length: int = 512
    max_depth: int = 32

    def __post_init__(self):
        if min(self.max_relators, self.max_word_length, self.max_depth) < 1:
            raise ValueError("bounds must be positive")


@dataclass(frozen=True)
class OrbitClosure:
    relators: tuple[CyclicWord, ...]
    exhausted: bool
    bounds: OrbitBounds
    depth_reached: int = 0

    def contains(self, w: Word) -> bool:
        return cyclic_normal_form(w, up_to_inverse=True) in set(self.relators)


def _moves(data: FiberData):
    out = []
    for m in data.monodromy_gens:
        out.append(m.apply)
        if isinstance(m, TwistAutomorphism) or getattr(m, "inverse_images", None) is not None:
            out.append(m.apply_inverse)
    return out


def orbit_closure(data: FiberData, bounds: OrbitBounds | None = None) -> OrbitClosure:
    bounds = bounds or OrbitBounds()
    seen: dict[CyclicWord, None] = {}
    frontier: list[CyclicWord] = []
    truncated = False
    for c in data.cycles:
        r = local_relators(c.word, c.N)
        if r not in seen:
            seen[r] = None
            frontier.append(r)
    moves = _moves(data)
    depth = 0
    while frontier and moves:
        if depth >= bounds.max_depth:
            truncated = True
            break
        depth += 1
        nxt = []
        for r in frontier:
            for move in moves:
                img = cyclic_normal_form(move(r.canonical), up_to_inverse=True)
                if img in seen:
                    continue
                if len(img) > bounds.max_word_length or len(seen) >= bounds.max_relators:
                    truncated = True
                    continue
                seen[img] = None
                nxt.append(img)
        frontier = sorted(nxt, key=cyclic_sort_key)
    rels = tuple(sorted(seen, key=cyclic_sort_key))
    return OrbitClosure(rels, not truncated, bounds, depth)


def is_closed(data: FiberData, orbit: OrbitClosure) -> bool:
    """Reapplying every move to every relator gives nothing new."""
    rels = set(orbit.relators)
    return all(
        cyclic_normal_form(m(r.canonical), up_to_inverse=True) in rels for r in orbit.relators for m in _moves(data)
    )


def base_change_rescale(data: FiberData, multipliers: Mapping[int, int]) -> FiberData:
    """Multiply every exponent by the multiplier of its fiber (default 1)."""
    for fid, m in multipliers.items():
        if m < 1:
            raise ValueError(f"multiplier for fiber {fid} must be positive")
    cycles = tuple(replace(c, N=c.N * multipliers.get(c.fiber_id, 1)) for c in data.cycles)
    return replace(data, cycles=cycles)


def fiber_presentation(data: FiberData, orbit: OrbitClosure) -> Presentation:
    rels = [r.canonical for r in orbit.relators]
    if not data.punctured:
        rels = [surface_relator(data.g)] + rels
    if not rels:
        return Presentation(data.rank, (), tuple(data.names()), free=True)
    return Presentation.from_words(data.rank, rels, data.names())


# handle stabilization ------------------------------------------------------


@dataclass(frozen=True)
class Stabilization:
    g: int
    h: int
    lifts: tuple[Word, ...]
    extra_cycles: tuple[Word, ...]

    def retract(self, w: Word) -> Word:
        return handle_retraction(w, self.g)


def handle_retraction(w: Word, g: int) -> Word:
    """Kill the handles beyond ``g``: ``pi_h -> pi_g``."""
    rank = 2 * g
    images = [Word.generator(rank, i) if i < rank else Word.identity(rank) for i in range(w.rank)]
    return apply_map(w, images)


def crossing_plan(words: Sequence[Word]) -> list[tuple[int, int]]:
    """Positions ``(word index, letter index)`` at which a new handle is threaded.

    Self crossings: every repeat visit of a generator within a word.
    Mutual crossings: the first letter of a later word on a handle already
    used by an earlier word.  Both counts over-estimate the geometric
    intersection numbers.
    """
    plan = []
    used_handles: set[int] = set()
    for wi, w in enumerate(words):
        seen: set[int] = set()
        mine: set[int] = set()
        for li, (gen, _) in enumerate(w.letters()):
            if gen in seen:
                plan.append((wi, li))
            seen.add(gen)
            handle = gen // 2
            if handle in used_handles and handle not in mine:
                plan.append((wi, li))
            mine.add(handle)
        used_handles |= mine
    return plan


def handle_stabilize(g: int, words: Sequence[Word]) -> Stabilization:
    for w in words:
        if w.is_identity():
            raise ValueError("words must be nontrivial")
        if w.rank != 2 * g:
            raise ValueError("word rank does not match genus")
    plan = crossing_plan(words)
    h = g + len(plan)
    rank = 2 * h
    inserts: dict[int, dict[int, list[Word]]] = {}
    for n, (wi, li) in enumerate(plan):
        handle = g + n
        # thread the first word through a_new, the partner (if mutual) through b_new
        inserts.setdefault(wi, {}).setdefault(li, []).append(Word.generator(rank, 2 * handle))
    lifts = []
    for wi, w in enumerate(words):
        out = Word.identity(rank)
        for li, (gen, sign) in enumerate(w.letters()):
            for x in inserts.get(wi, {}).get(li, []):
                out = out * x
            out = out * Word.generator(rank, gen, sign)
        lifts.append(out)
    extra = []
    for n in range(len(plan)):
        extra += [Word.generator(rank, 2 * (g + n)), Word.generator(rank, 2 * (g + n) + 1)]
    return Stabilization(g, h, tuple(lifts), tuple(extra))


# finite-quotient analysis --------------------------------------------------


ORACLES = ("abelian", "uc", "exp3", "enum")


@dataclass(frozen=True)
class FiniteUpperEvidence:
    order: int
    source: str = "coset enumeration"

    kind = "FiniteUpperEvidence"


@dataclass(frozen=True)
class InfiniteWitness:
    description: str
    data: dict = field(default_factory=dict, compare=False)

    kind = "InfiniteWitness"


@dataclass(frozen=True)
class Unknown:
    bounds: dict = field(default_factory=dict, compare=False)

    kind = "Unknown"


QuotientVerdict = FiniteUpperEvidence | InfiniteWitness | Unknown


def verdict_dict(v) -> dict:
    out = {"kind": v.kind}
    if isinstance(v, FiniteUpperEvidence):
        out.update(order=v.order, source=v.source)
    elif isinstance(v, InfiniteWitness):
        out.update(description=v.description, data=v.data)
    else:
        out.update(bounds=v.bounds)
    return out


@dataclass
class QuotientAnalysis:
    verdict: object
    orbit: OrbitClosure
    reports: dict

    def as_dict(self) -> dict:
        return {
            "verdict": verdict_dict(self.verdict),
            "orbit": {"relators": len(self.orbit.relators), "exhausted": self.orbit.exhausted},
            "oracles": self.reports,
        }


def analyze_quotient(
    data: FiberData,
    bounds: OrbitBounds | None = None,
    oracles: Sequence[str] = ("abelian", "uc", "enum"),
    max_cosets: int = 10**5,
) -> QuotientAnalysis:
    """Run the selected finite-quotient oracles on the orbit-closure presentation.

    A truncated orbit gives a presentation with fewer relators than the
    true fiber group, so finite orders found here are upper bounds on the
    true order, while infiniteness is only claimed for an exhausted orbit.
    """
    from .burnside3 import b3_from_word
    from .nilpotent import uc_element_order, uc_from_word

    for o in oracles:
        if o not in ORACLES:
            raise ValueError(f"unknown oracle {o!r}; choose from {ORACLES}")
    orbit = orbit_closure(data, bounds)
    pres = fiber_presentation(data, orbit)
    reports: dict = {}
    verdict = Unknown({"max_cosets": max_cosets, **vars(orbit.bounds)})
    inv: AbelianInvariants | None = None
    if "abelian" in oracles:
        inv = abelian_invariants(pres)
        reports["abelian"] = {"free_rank": inv.free_rank, "torsion": list(inv.torsion)}
    if "uc" in oracles:
        rows = []
        for c in data.cycles:
            if data.punctured or c.N % 2 == 0:
                rows.append({"cycle": format_word(c.word, data.names()), "N": c.N, "order": None})
                continue
            img = uc_from_word(c.word, data.g, c.N)
            rows.append({"cycle": format_word(c.word, data.names()), "N": c.N, "order": uc_element_order(img)})
        reports["uc"] = rows
    if "exp3" in oracles:
        rows = []
        for c in data.cycles:
            el = b3_from_word(c.word)
            rows.append({"cycle": format_word(c.word, data.names()), "order": 1 if el.is_identity() else 3})
        rel_ok = data.punctured or b3_from_word(surface_relator(data.g)).is_identity()
        reports["exp3"] = {"images": rows, "surface_relator_trivial": rel_ok}
    if "enum" in oracles:
        table = coset_enumerate(pres, max_cosets=max_cosets)
        status = table.status
        reports["enum"] = {
            "status": "complete" if isinstance(status, Complete) else "overflow",
            "order": status.index if isinstance(status, Complete) else None,
            "cosets_used": table.cosets_used,
        }
        if isinstance(status, Complete):
            verdict = FiniteUpperEvidence(status.index)
    if isinstance(verdict, Unknown) and inv is not None and inv.free_rank > 0 and orbit.exhausted:
        verdict = InfiniteWitness(
            "abelianization has positive free rank",
            {"free_rank": inv.free_rank, "torsion": list(inv.torsion)},
        )
    return QuotientAnalysis(verdict, orbit, reports)


# text format ---------------------------------------------------------------

_CYCLE = re.compile(r"^(?P<word>.+?)\s+\^\s*(?P<N>\d+)(?:\s+fiber\s*=\s*(?P<fid>\d+))?\s*$")
_TWIST = re.compile(r"^twist\(\s*(?P<curve>[ab]\d+)\s*\)$")
_SEP = re.compile(r"^sep\(\s*(?P<h>\d+)\s*\)$")


def parse_fiber_data(text: str) -> FiberData:
    """Read ``genus:``, ``monodromy:``, ``cycle:`` and ``punctured:`` lines.

    Other ``key: value`` lines are ignored so that graph descriptions can
    share the file.
    """
    g = None
    mono_specs: list[str] = []
    cycle_specs: list[str] = []
    punctured = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise ValueError(f"unrecognised line: {raw!r}")
        key, value = key.strip().lower(), value.strip()
        if key == "genus":
            g = int(value)
        elif key == "monodromy":
            if value.lower() not in ("", "none", "trivial"):
                mono_specs += [s.strip() for s in value.split("),") if s.strip()]
        elif key == "cycle":
            cycle_specs.append(value)
        elif key == "punctured":
            punctured = value.lower() in ("1", "true", "yes")
    if g is None:
        raise ValueError("fiber data needs a 'genus:' line")
    names = surface_names(g)
    mono = []
    for spec in mono_specs:
        spec = spec if spec.endswith(")") else spec + ")"
        if m := _TWIST.match(spec):
            mono.append(twist_automorphism(g, m["curve"]))
        elif m := _SEP.match(spec):
            mono.append(separating_twist(g, int(m["h"])))
        else:
            raise ValueError(f"unknown monodromy generator {spec!r}")
    cycles = []
    for spec in cycle_specs:
        m = _CYCLE.match(spec)
        if not m:
            raise ValueError(f"cannot parse cycle {spec!r}; expected '<word> ^N [fiber=K]'")
        cycles.append(Cycle(parse_word(m["word"], names), int(m["N"]), int(m["fid"] or 0)))
    return FiberData(g, tuple(mono), tuple(cycles), punctured)


def format_fiber_data(data: FiberData) -> str:
    lines = [f"genus: {data.g}"]
    if data.punctured:
        lines.append("punctured: true")
    specs = []
    for m in data.monodromy_gens:
        if isinstance(m, TwistAutomorphism):
            specs.append(f"twist({m.curve})")
        elif m.name.startswith("sep("):
            specs.append(m.name)
        else:
            raise ValueError("explicit automorphisms have no text form")
    lines.append("monodromy: " + (", ".join(specs) if specs else "none"))
    for c in data.cycles:
        lines.append(f"cycle: {format_word(c.word, data.names())} ^{c.N} fiber={c.fiber_id}")
    return "\n".join(lines) + "\n"


__all__ = [
    "Cycle",
    "ExplicitAutomorphism",
    "FiberData",
    "FiniteUpperEvidence",
    "InfiniteWitness",
    "OrbitBounds",
    "OrbitClosure",
    "QuotientAnalysis",
    "Stabilization",
    "Unknown",
    "analyze_quotient",
    "base_change_rescale",
    "fiber_presentation",
    "format_fiber_data",
    "handle_retraction",
    "handle_stabilize",
    "is_closed",
    "local_relators",
    "orbit_closure",
    "parse_fiber_data",
    "separating_twist",
]
