"""Dual graphs of singular fibers and free-product infiniteness evidence.

A scan over a split ``K = K1 u K2`` of a connected subgraph of the dual
graph collects finiteness evidence for the images of ``F_K1`` and ``F_K2``
and infiniteness evidence for ``F_K`` through a user-supplied homomorphism
onto a free product of finite groups.  Verdicts are evidence levels at the
chosen quotient, not theorems about the surface.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import networkx as nx

from .burnside3 import B3Element, b3_multiply, b3_order
from .fiberquot import FiberData, FiniteUpperEvidence, OrbitBounds, OrbitClosure, Unknown, orbit_closure
from .fpgroup import Complete, Presentation, coset_enumerate, primitive_family
from .words import Word, apply_map, cyclic_normal_form, format_word, surface_relator

# dual graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class DualGraph:
    """Components with genera, internal edges (nodes) and external half-edges."""

    genera: tuple[int, ...]
    edges: tuple[tuple[int, int], ...] = ()
    external: tuple[int, ...] = ()

    def __post_init__(self):
        n = len(self.genera)
        if any(g < 0 for g in self.genera):
            raise ValueError("genera must be nonnegative")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) names a missing component")
        if any(not 0 <= c < n for c in self.external):
            raise ValueError("external edge on a missing component")

    def graph(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(range(len(self.genera)))
        G.add_edges_from(self.edges)
        return G

    def is_connected(self) -> bool:
        return len(self.genera) > 0 and nx.is_connected(self.graph())

    def arithmetic_genus(self) -> int:
        """Genus of the smoothing: sum of genera plus the first Betti number."""
        G = self.graph()
        b1 = G.number_of_edges() - G.number_of_nodes() + nx.number_connected_components(G)
        return sum(self.genera) + b1

    def degree(self, c: int) -> int:
        d = sum((u == c) + (v == c) for u, v in self.edges)
        return d + sum(x == c for x in self.external)


def _check_subset(graph: DualGraph, K) -> frozenset:
    K = frozenset(K)
    if not K:
        raise ValueError("subgraph must be nonempty")
    if not K <= set(range(len(graph.genera))):
        raise ValueError("subgraph names a missing component")
    if not nx.is_connected(graph.graph().subgraph(K)):
        raise ValueError(f"subgraph {sorted(K)} is not connected")
    leaving = any(x in K for x in graph.external) or any((u in K) != (v in K) for u, v in graph.edges)
    if not leaving:
        raise ValueError(f"subgraph {sorted(K)} is not proper: no edge leaves it")
    return K


def subgraph_euler(graph: DualGraph, K) -> int:
    K = _check_subset(graph, K)
    return sum(2 - 2 * graph.genera[i] - graph.degree(i) for i in K)


def subgraph_rank(graph: DualGraph, K) -> int:
    """Rank of the free group of the preimage of the components in ``K``."""
    return 1 - subgraph_euler(graph, K)


def parse_dual_graph(text: str) -> DualGraph:
    """Read ``component: g=1``, ``edge: 0 1`` and ``external: 0`` lines; others are ignored."""
    genera: list[int] = []
    edges: list[tuple[int, int]] = []
    external: list[int] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        key, _, value = line.partition(":")
        key, value = key.strip().lower(), value.strip()
        if key == "component":
            m = re.fullmatch(r"g\s*=\s*(\d+)", value)
            if not m:
                raise ValueError(f"bad component line {raw!r}")
            genera.append(int(m[1]))
        elif key == "edge":
            u, v = (int(x) for x in value.split())
            edges.append((u, v))
        elif key == "external":
            external += [int(x) for x in value.split()]
    return DualGraph(tuple(genera), tuple(edges), tuple(external))


# finite factors and free products -------------------------------------------


class _Factor:
    name = ""

    def __eq__(self, other):
        return type(other) is type(self) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"{type(self).__name__}({self.name})"


class BurnsideFactor(_Factor):
    """B(n, 3) with collected normal forms."""

    def __init__(self, n: int):
        self.n = n
        self.name = f"B({n},3)"

    def identity(self):
        return B3Element.identity(self.n)

    def generators(self):
        return [B3Element.generator(self.n, i) for i in range(self.n)]

    def multiply(self, x, y):
        return b3_multiply(x, y)

    def inverse(self, x):
        return x.inverse()

    def order(self) -> int:
        return b3_order(self.n)

    def fmt(self, x) -> str:
        return str(x)


class AbelianFactor(_Factor):
    """(Z_m)^k, elements as tuples of residues."""

    def __init__(self, m: int, k: int):
        if m < 1 or k < 0:
            raise ValueError("need m >= 1 and k >= 0")
        self.m, self.n = m, k
        self.name = f"Z{m}^{k}"

    def identity(self):
        return (0,) * self.n

    def generators(self):
        return [tuple(int(i == j) % self.m for j in range(self.n)) for i in range(self.n)]

    def multiply(self, x, y):
        return tuple((a + b) % self.m for a, b in zip(x, y))

    def inverse(self, x):
        return tuple((-a) % self.m for a in x)

    def order(self) -> int:
        return self.m**self.n

    def fmt(self, x) -> str:
        return "(" + ",".join(map(str, x)) + ")"


def parse_factor(text: str):
    text = text.strip().replace(" ", "")
    if m := re.fullmatch(r"B\((\d+),3\)", text):
        return BurnsideFactor(int(m[1]))
    if m := re.fullmatch(r"Z(\d+)(?:\^(\d+))?", text):
        return AbelianFactor(int(m[1]), int(m[2] or 1))
    raise ValueError(f"unknown factor {text!r}; use B(n,3) or Zm^k")


@dataclass(frozen=True)
class FreeProductElement:
    factors: tuple
    sequence: tuple[tuple[int, object], ...] = ()

    def __len__(self) -> int:
        return len(self.sequence)

    def is_identity(self) -> bool:
        return not self.sequence

    def __mul__(self, other: "FreeProductElement") -> "FreeProductElement":
        return free_product_reduce(FreeProductElement(self.factors, self.sequence + other.sequence))

    def inverse(self) -> "FreeProductElement":
        seq = tuple((i, self.factors[i].inverse(x)) for i, x in reversed(self.sequence))
        return FreeProductElement(self.factors, seq)

    def __pow__(self, k: int) -> "FreeProductElement":
        base = self if k >= 0 else self.inverse()
        out = FreeProductElement(self.factors)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __str__(self) -> str:
        if not self.sequence:
            return "1"
        return " * ".join(f"{i}:{self.factors[i].fmt(x)}" for i, x in self.sequence)


def free_product_reduce(e: FreeProductElement) -> FreeProductElement:
    """Merge adjacent entries from the same factor and drop identities."""
    out: list[tuple[int, object]] = []
    for i, x in e.sequence:
        F = e.factors[i]
        if x == F.identity():
            continue
        if out and out[-1][0] == i:
            y = F.multiply(out[-1][1], x)
            out.pop()
            if y != F.identity():
                out.append((i, y))
        else:
            out.append((i, x))
    return FreeProductElement(e.factors, tuple(out))


@dataclass(frozen=True)
class InfiniteOrderWitness:
    element: FreeProductElement
    checked_to: int
    lengths_ok: bool

    def as_dict(self) -> dict:
        return {
            "element": str(self.element),
            "checked_to": self.checked_to,
            "growth": "2k" if self.lengths_ok else "failed",
        }


def free_product_infinite_witness(factors: Sequence, powers: int = 100) -> InfiniteOrderWitness | None:
    """``g h`` with ``g, h`` generators of two nontrivial factors.

    Its ``k``-th power is the reduced alternating word of length ``2k``; that
    is checked for ``k <= powers``.
    """
    if len(factors) < 2:
        raise ValueError("need at least two factors")
    live = [i for i, F in enumerate(factors) if F.order() > 1]
    if len(live) < 2:
        return None
    i, j = live[:2]
    g = next(x for x in factors[i].generators() if x != factors[i].identity())
    h = next(x for x in factors[j].generators() if x != factors[j].identity())
    e = FreeProductElement(tuple(factors), ((i, g), (j, h)))
    p = FreeProductElement(tuple(factors))
    ok = True
    for k in range(1, powers + 1):
        p = p * e
        ok &= len(p) == 2 * k
    return InfiniteOrderWitness(e, powers, ok)


# homomorphisms onto free products ------------------------------------------


@dataclass(frozen=True)
class FreeProductHom:
    """Images of the surface generators in a free product of finite groups."""

    factors: tuple
    images: tuple[FreeProductElement, ...]

    def __call__(self, w: Word) -> FreeProductElement:
        if w.rank != len(self.images):
            raise ValueError("word rank does not match the number of images")
        out = FreeProductElement(self.factors)
        for g, e in w.syllables:
            out = out * (self.images[g] ** e)
        return out

    def factor_surjective(self) -> list[bool]:
        """Per factor: do the single-factor images generate it?"""
        res = []
        for i, F in enumerate(self.factors):
            gens = [im.sequence[0][1] for im in self.images if len(im) == 1 and im.sequence[0][0] == i]
            res.append(_closure_size(F, gens) == F.order())
        return res


def _closure_size(F, gens) -> int:
    seen = {F.identity()}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for gen in gens:
                y = F.multiply(x, gen)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def parse_hom(lines: Sequence[str], factors: Sequence, names: Sequence[str]) -> FreeProductHom:
    """``a1 -> 0.x1``, ``b2 -> 1.x2^2 0.x1`` style generator images."""
    images: dict[str, FreeProductElement] = {}
    for line in lines:
        lhs, _, rhs = line.partition("->")
        lhs = lhs.strip()
        if lhs not in names:
            raise ValueError(f"unknown generator {lhs!r} in map line")
        el = FreeProductElement(tuple(factors))
        for tok in rhs.split():
            m = re.fullmatch(r"(\d+)\.x(\d+)(?:\^(-?\d+))?", tok)
            if not m:
                raise ValueError(f"bad image token {tok!r}")
            fi, gi, e = int(m[1]), int(m[2]) - 1, int(m[3] or 1)
            F = factors[fi]
            x = F.generators()[gi]
            piece = F.identity()
            for _ in range(e % max(F.order(), 1) if F.order() > 1 else 0):
                piece = F.multiply(piece, x)
            el = el * FreeProductElement(tuple(factors), ((fi, piece),))
        images[lhs] = el
    missing = [n for n in names if n not in images]
    if missing:
        raise ValueError(f"map lines missing for {missing}")
    return FreeProductHom(tuple(factors), tuple(images[n] for n in names))


def component_hom(data: FiberData, factors: Sequence, handles: Sequence[int]) -> FreeProductHom:
    """Send handle ``i`` (``a_i, b_i``) to the two generators of ``factors[handles[i]]``."""
    if len(handles) != data.g:
        raise ValueError("need one factor index per handle")
    images = []
    for h in handles:
        F = factors[h]
        gens = F.generators()
        if len(gens) < 2:
            raise ValueError(f"factor {F.name} needs two generators")
        images += [FreeProductElement(tuple(factors), ((h, gens[0]),)), FreeProductElement(tuple(factors), ((h, gens[1]),))]
    return FreeProductHom(tuple(factors), tuple(images))


# exponent-three evidence -----------------------------------------------------

_VERIFIED_FAMILY = {1: "basic", 2: "pairs", 3: "triples"}


def _family_order(rank: int) -> int | None:
    """Order of the free group of ``rank`` modulo the cubes of the curated family, if verified."""
    fam = _VERIFIED_FAMILY.get(rank)
    if fam is None:
        return None
    words = [w**3 for w in primitive_family(rank, fam)]
    st = coset_enumerate(Presentation.from_words(rank, words), max_cosets=10**5).status
    return st.index if isinstance(st, Complete) else None


def component_exponent3_criterion(
    data: FiberData, graph: DualGraph, component, orbit: OrbitClosure, generators: Sequence[Word]
):
    """Finiteness of the image of ``F_K`` from cubes present in the orbit.

    ``generators`` is a free basis of ``F_K`` written in ``pi_g``.  The cubes
    of the curated primitive family over that basis must all be orbit
    relators; the image is then a quotient of the family group, whose order
    ``b3_order(rank)`` is confirmed by enumeration for rank <= 3.
    """
    K = component if isinstance(component, (set, frozenset, tuple, list)) else (component,)
    rank = subgraph_rank(graph, K)
    if len(generators) != rank:
        raise ValueError(f"expected {rank} generating words, got {len(generators)}")
    if rank == 0:
        return FiniteUpperEvidence(1, "trivial free group")
    fam = _VERIFIED_FAMILY.get(rank)
    if fam is None:
        return Unknown({"reason": f"no verified exponent-3 family at rank {rank}"})
    rels = set(orbit.relators)
    missing = []
    for w in primitive_family(rank, fam):
        word = apply_map(w, list(generators))
        if cyclic_normal_form(word**3, up_to_inverse=True) not in rels:
            missing.append(format_word(word, data.names()))
    if missing:
        return Unknown({"missing_cubes": missing})
    order = _family_order(rank)
    if order != b3_order(rank):
        return Unknown({"reason": "family order not confirmed"})
    return FiniteUpperEvidence(order, "exponent-3 criterion")


# the scan --------------------------------------------------------------------

VERDICTS = ("CandidateCounterexample", "Inconclusive", "RefutedAtThisLevel")


@dataclass
class ScanReport:
    verdict: str
    parts: dict
    union: dict
    orbit: dict
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "parts": self.parts, "union": self.union, "orbit": self.orbit, "notes": self.notes}


def _evidence(v) -> dict:
    from .fiberquot import verdict_dict

    return verdict_dict(v)


def lemma41_scan(
    data: FiberData,
    graph: DualGraph,
    K1,
    K2,
    part_generators: Mapping[str, Sequence[Word]],
    hom: FreeProductHom | None,
    bounds: OrbitBounds | None = None,
    union_generators: Sequence[Word] | None = None,
) -> ScanReport:
    """Finite images on ``K1`` and ``K2`` with an infinite image on their union.

    ``part_generators`` maps ``"K1"``/``"K2"`` to free bases of the part
    groups.  ``hom`` sends ``pi_g`` (or the free group of the punctured
    fiber) onto a free product; every relator of the fiber group, including
    every orbit relator, must map to the identity before any infiniteness is
    credited.  ``union_generators``, when given, lets the union itself be
    tested by the exponent-3 criterion, which can refute the split.
    """
    K1, K2 = frozenset(K1), frozenset(K2)
    if not K1 or not K2:
        raise ValueError("both parts of the split must be nonempty")
    if K1 & K2:
        raise ValueError("the parts of the split must be disjoint")
    _check_subset(graph, K1)
    _check_subset(graph, K2)
    if not nx.is_connected(graph.graph().subgraph(K1 | K2)):
        raise ValueError("the union of the parts must be connected")

    orbit = orbit_closure(data, bounds)
    notes: list[str] = []
    parts = {}
    finite = []
    for label, K in (("K1", K1), ("K2", K2)):
        gens = part_generators.get(label)
        if gens is None:
            raise ValueError(f"no generators supplied for {label}")
        v = component_exponent3_criterion(data, graph, K, orbit, gens)
        parts[label] = {"components": sorted(K), "rank": subgraph_rank(graph, K), "evidence": _evidence(v)}
        finite.append(isinstance(v, FiniteUpperEvidence))

    union: dict = {"components": sorted(K1 | K2)}
    infinite = False
    refuted = False
    if union_generators is not None and (K1 | K2) != frozenset(range(len(graph.genera))):
        v = component_exponent3_criterion(data, graph, K1 | K2, orbit, union_generators)
        union["exponent3"] = _evidence(v)
        refuted = isinstance(v, FiniteUpperEvidence)
    if hom is not None:
        gate = _gate(data, orbit, hom)
        union["gate"] = gate
        surj = hom.factor_surjective()
        union["factors"] = [F.name for F in hom.factors]
        union["surjective"] = all(surj)
        wit = free_product_infinite_witness(hom.factors)
        union["witness"] = wit.as_dict() if wit else None
        infinite = gate["passed"] and all(surj) and wit is not None and wit.lengths_ok
        if not gate["passed"]:
            notes.append("a fiber-group relator does not map to the identity")
    if not orbit.exhausted:
        notes.append("orbit closure truncated; evidence refers to the truncated relator set")

    if refuted:
        verdict = "RefutedAtThisLevel"
    elif infinite and all(finite):
        verdict = "CandidateCounterexample"
    else:
        verdict = "Inconclusive"
    orbit_info = {"relators": len(orbit.relators), "exhausted": orbit.exhausted}
    return ScanReport(verdict, parts, union, orbit_info, notes)


def _gate(data: FiberData, orbit: OrbitClosure, hom: FreeProductHom) -> dict:
    names = data.names()
    checks = []
    if not data.punctured:
        checks.append(("surface", surface_relator(data.g)))
    for c in data.cycles:
        checks.append(("cycle", c.word**c.N))
    for r in orbit.relators:
        checks.append(("orbit", r.canonical))
    for kind, w in checks:
        if not hom(w).is_identity():
            return {"passed": False, "checked": len(checks), "failing": {"kind": kind, "relator": format_word(w, names)}}
    return {"passed": True, "checked": len(checks), "failing": None}


# the standard fixture -------------------------------------------------------


def two_torus_chain(punctured: bool = True):
    """Two genus-1 components meeting in one node.

    The vanishing cycle of the node is the separating curve ``[a1,b1]`` and
    the monodromy contains its twist.  Each handle carries the exponent-3
    family ``x, y, x y, x y^-1``; the node cycle gets exponent 3 as well.
    Returns ``(data, graph, part_generators)``.
    """
    from .fiberquot import Cycle, separating_twist

    g = 2
    rank = 2 * g
    x = [Word.generator(rank, i) for i in range(rank)]
    cycles = []
    for h in range(2):
        a, b = x[2 * h], x[2 * h + 1]
        for w in primitive_family(2, "pairs"):
            cycles.append(Cycle(apply_map(w, [a, b]), 3, fiber_id=1 + h))
    node = x[0] * x[1] * x[0].inverse() * x[1].inverse()
    cycles.append(Cycle(node, 3, fiber_id=0))
    data = FiberData(g, (separating_twist(g, 1),), tuple(cycles), punctured)
    graph = DualGraph((1, 1), ((0, 1),))
    parts = {"K1": [x[0], x[1]], "K2": [x[2], x[3]]}
    return data, graph, parts


def parse_scan_file(text: str):
    """Fiber data, dual graph, part generators, factors and the map from one file.

    Extra keys: ``generators K1: a1, b1``, ``factor: B(2,3)``,
    ``map: a1 -> 0.x1``.
    """
    from .fiberquot import parse_fiber_data
    from .words import parse_word, split_top_level

    fiber_lines, factor_specs, map_lines = [], [], []
    parts: dict[str, list[str]] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        k = key.strip().lower()
        if k.startswith("generators"):
            label = key.strip().split()[-1]
            parts[label] = split_top_level(value)
        elif k == "factor":
            factor_specs.append(value)
        elif k == "map":
            map_lines.append(value)
        elif k not in ("component", "edge", "external"):
            fiber_lines.append(line)
    data = parse_fiber_data("\n".join(fiber_lines))
    graph = parse_dual_graph(text)
    names = data.names()
    gens = {label: [parse_word(t, names) for t in ws] for label, ws in parts.items()}
    factors = [parse_factor(s) for s in factor_specs]
    hom = parse_hom(map_lines, factors, names) if factors else None
    return data, graph, gens, hom


__all__ = [
    "AbelianFactor",
    "BurnsideFactor",
    "DualGraph",
    "FreeProductElement",
    "FreeProductHom",
    "InfiniteOrderWitness",
    "ScanReport",
    "component_exponent3_criterion",
    "component_hom",
    "free_product_infinite_witness",
    "free_product_reduce",
    "lemma41_scan",
    "parse_dual_graph",
    "parse_factor",
    "parse_hom",
    "parse_scan_file",
    "subgraph_euler",
    "subgraph_rank",
    "two_torus_chain",
]
