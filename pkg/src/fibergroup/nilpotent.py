"""Finite nilpotent quotients of surface groups.

``UC_g^N`` (N odd) is pi_g modulo its third lower central term and all N-th
powers.  Elements are pairs ``(v, w)`` with ``v`` in (Z_N)^{2g} and ``w`` in
the exterior square modulo the symplectic line ``omega = sum a_i ^ b_i``:

    (v1, w1)(v2, w2) = (v1 + v2, w1 + w2 + v1 ^ v2)

so ``[x, y] = (0, 2 x ^ y)`` and the surface relator maps to ``2 omega = 0``.

For N = 2 the quotient is the tree-glued central extension: one
Z_2-extension of (Z_2)^{2 g_j} per fiber component with all centres
identified.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, gcd
from typing import Sequence

import networkx as nx

from .words import Word

# UC_g^N ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _wedge_basis(g: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(2 * g), 2))


@lru_cache(maxsize=None)
def _wedge_index(g: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(_wedge_basis(g))}


def _reduce_omega(g: int, N: int, w: Sequence[int]) -> tuple[int, ...]:
    # transversal of the omega line: a1^b1 = -sum_{i>=2} ai^bi, coordinate dropped
    idx = _wedge_index(g)
    w = [x % N for x in w]
    t = w[idx[(0, 1)]]
    if t and g > 1:
        for i in range(1, g):
            k = idx[(2 * i, 2 * i + 1)]
            w[k] = (w[k] - t) % N
    w[idx[(0, 1)]] = 0
    return tuple(w)


def _check_odd(N: int) -> None:
    if N >= 4 and N % 4 == 0:
        raise ValueError(f"N = {N}: the N divisible by 4 case is not implemented (central exponent not pinned down)")
    if N < 1 or N % 2 == 0:
        raise ValueError(f"UC_g^N needs odd N (got {N}); use the tree extension for N = 2")


@dataclass(frozen=True)
class UCElement:
    g: int
    N: int
    v: tuple[int, ...]
    w: tuple[int, ...]

    @classmethod
    def make(cls, g: int, N: int, v: Sequence[int], w: Sequence[int] | None = None) -> "UCElement":
        _check_odd(N)
        if len(v) != 2 * g:
            raise ValueError("v must have length 2g")
        if w is None:
            w = [0] * comb(2 * g, 2)
        return cls(g, N, tuple(x % N for x in v), _reduce_omega(g, N, w))

    @classmethod
    def identity(cls, g: int, N: int) -> "UCElement":
        return cls.make(g, N, [0] * (2 * g))

    @classmethod
    def generator(cls, g: int, N: int, i: int) -> "UCElement":
        v = [0] * (2 * g)
        v[i] = 1
        return cls.make(g, N, v)

    def __mul__(self, other: "UCElement") -> "UCElement":
        if (self.g, self.N) != (other.g, other.N):
            raise ValueError("elements of different groups")
        w = list(a + b for a, b in zip(self.w, other.w))
        for k, (p, q) in enumerate(_wedge_basis(self.g)):
            w[k] += self.v[p] * other.v[q] - self.v[q] * other.v[p]
        return UCElement.make(self.g, self.N, [a + b for a, b in zip(self.v, other.v)], w)

    def inverse(self) -> "UCElement":
        # v ^ v = 0, so (v, w)^-1 = (-v, -w)
        return UCElement.make(self.g, self.N, [-x for x in self.v], [-x for x in self.w])

    def is_identity(self) -> bool:
        return not any(self.v) and not any(self.w)

    def as_dict(self) -> dict:
        return {"v": list(self.v), "w": list(self.w), "order": uc_element_order(self)}


def uc_from_word(w: Word, g: int, N: int) -> UCElement:
    _check_odd(N)
    if w.rank != 2 * g:
        raise ValueError(f"word rank {w.rank} does not match 2g = {2 * g}")
    out = UCElement.identity(g, N)
    gens = [UCElement.generator(g, N, i) for i in range(2 * g)]
    for gen, e in w.syllables:
        base = gens[gen] if e > 0 else gens[gen].inverse()
        for _ in range(abs(e) % N):
            out = out * base
    return out


def uc_order(g: int, N: int) -> int:
    _check_odd(N)
    return N ** (2 * g) * N ** (comb(2 * g, 2) - 1)


def uc_element_order(e: UCElement) -> int:
    # (v, w)^k = (k v, k w) because v ^ v = 0
    d = e.N
    for x in e.v + e.w:
        d = gcd(d, x)
    return e.N // d


def closure_size(generators: Sequence, identity) -> int:
    """Brute-force size of the group generated by ``generators`` (breadth first)."""
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in generators:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


def induced_automorphism(images: Sequence[Word], g: int, N: int):
    """The map UC_g^N -> UC_g^N induced by generator images (on generators)."""
    targets = [uc_from_word(w, g, N) for w in images]

    def act(word: Word) -> UCElement:
        out = UCElement.identity(g, N)
        for gen, e in word.syllables:
            base = targets[gen] if e > 0 else targets[gen].inverse()
            for _ in range(abs(e) % N):
                out = out * base
        return out

    return act


# N = 2 tree extension ---------------------------------------------------------


@dataclass(frozen=True)
class TreeElement:
    """Element of the tree-glued extension: per-component Z_2 vectors and one central bit."""

    parts: tuple[tuple[int, ...], ...]
    z: int
    group: "TreeExtensionGroup" = field(repr=False, compare=False)

    def __mul__(self, other: "TreeElement") -> "TreeElement":
        return self.group.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, TreeElement) and (self.parts, self.z) == (other.parts, other.z)

    def __hash__(self):
        return hash((self.parts, self.z))

    def is_identity(self) -> bool:
        return self.z == 0 and not any(any(p) for p in self.parts)

    def order(self) -> int:
        if self.is_identity():
            return 1
        return 2 if (self * self).is_identity() else 4


class TreeExtensionGroup:
    """Product of central extensions G_j of (Z_2)^{2 g_j}, centres identified along tree edges.

    Cocycle on component j: ``beta_j(u, v) = sum_i u_{a_i} v_{b_i} + l_j(u) l_j(v)``
    where ``l_j`` is a linear form agreeing with ``q(x) = sum x_{a_i} x_{b_i}`` on the
    supplied isotropic cycles, so that each such cycle lifts to an element of
    order exactly 2.  Commutators give the symplectic form times the centre.
    """

    def __init__(self, genera: Sequence[int], edges: Sequence[tuple[int, int]], functionals):
        self.genera = tuple(genera)
        self.edges = tuple(edges)
        self.functionals = tuple(tuple(f) for f in functionals)

    def identity(self) -> TreeElement:
        return TreeElement(tuple((0,) * (2 * g) for g in self.genera), 0, self)

    def order(self) -> int:
        return 2 ** (1 + sum(2 * g for g in self.genera))

    def center(self) -> TreeElement:
        return TreeElement(self.identity().parts, 1, self)

    def element(self, component: int, vec: Sequence[int], z: int = 0) -> TreeElement:
        parts = list(self.identity().parts)
        if len(vec) != 2 * self.genera[component]:
            raise ValueError("vector length must be 2 g_j")
        parts[component] = tuple(x % 2 for x in vec)
        return TreeElement(tuple(parts), z % 2, self)

    def generators(self) -> list[TreeElement]:
        out = []
        for j, g in enumerate(self.genera):
            for i in range(2 * g):
                vec = [0] * (2 * g)
                vec[i] = 1
                out.append(self.element(j, vec))
        return out

    def _beta(self, j: int, u: Sequence[int], v: Sequence[int]) -> int:
        total = sum(u[2 * i] * v[2 * i + 1] for i in range(self.genera[j]))
        lam = self.functionals[j]
        lu = sum(a * b for a, b in zip(lam, u))
        lv = sum(a * b for a, b in zip(lam, v))
        return (total + lu * lv) % 2

    def multiply(self, x: TreeElement, y: TreeElement) -> TreeElement:
        z = x.z + y.z
        parts = []
        for j, (u, v) in enumerate(zip(x.parts, y.parts)):
            z += self._beta(j, u, v)
            parts.append(tuple((a + b) % 2 for a, b in zip(u, v)))
        return TreeElement(tuple(parts), z % 2, self)

    def commutator(self, x: TreeElement, y: TreeElement) -> TreeElement:
        # every element squares into the centre, so x^-1 = x * (x^2)
        xi = x * (x * x)
        yi = y * (y * y)
        return x * y * xi * yi


@dataclass
class TreeExtension:
    group: TreeExtensionGroup
    z_cycle_images: dict[tuple[int, int], TreeElement]
    nz_cycle_images: list[TreeElement]
    centers: list[TreeElement]


def _isotropic(vectors: Sequence[Sequence[int]], g: int) -> bool:
    for u, v in itertools.combinations(vectors, 2):
        s = sum(u[2 * i] * v[2 * i + 1] - u[2 * i + 1] * v[2 * i] for i in range(g))
        if s % 2:
            return False
    return True


def _solve_functional(vectors: Sequence[Sequence[int]], values: Sequence[int], dim: int) -> list[int]:
    """Find ``l`` over Z_2 with ``l(vectors[k]) = values[k]`` (Gaussian elimination)."""
    rows = [[x % 2 for x in v] + [b % 2] for v, b in zip(vectors, values)]
    pivots = []
    r = 0
    for c in range(dim):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                rows[i] = [(a + b) % 2 for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][dim]:
            raise ValueError("quadratic refinement is not linear on the supplied cycles")
    sol = [0] * dim
    for i, c in enumerate(pivots):
        sol[c] = rows[i][dim]
    return sol


def tree_extension_build(
    genera: Sequence[int],
    edges: Sequence[tuple[int, int]],
    nz_cycles: Sequence[Sequence[Sequence[int]]] | None = None,
) -> TreeExtension:
    """Build the N = 2 quotient for a fiber whose Z-cycle graph is a tree.

    ``nz_cycles[j]`` lists homology vectors (length ``2 g_j``) of NZ-cycles on
    component ``j``; they must be pairwise isotropic mod 2.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(len(genera)))
    graph.add_edges_from(edges)
    if len(edges) != graph.number_of_edges() or not nx.is_tree(graph):
        raise ValueError("component graph must be a tree")
    if nz_cycles is None:
        nz_cycles = [[] for _ in genera]
    functionals = []
    for j, g in enumerate(genera):
        cyc = [tuple(x % 2 for x in v) for v in nz_cycles[j]]
        if any(len(v) != 2 * g for v in cyc):
            raise ValueError(f"cycle vectors on component {j} must have length {2 * g}")
        if any(not any(v) for v in cyc):
            raise ValueError("NZ-cycles must be nonzero mod 2")
        if not _isotropic(cyc, g):
            raise ValueError(f"NZ-cycles on component {j} are not isotropic")
        q = [sum(v[2 * i] * v[2 * i + 1] for i in range(g)) % 2 for v in cyc]
        functionals.append(_solve_functional(cyc, q, 2 * g))
    group = TreeExtensionGroup(genera, edges, functionals)
    centers = []
    for j, g in enumerate(genera):
        if g:
            a = group.element(j, [1] + [0] * (2 * g - 1))
            b = group.element(j, [0, 1] + [0] * (2 * g - 2))
            centers.append(group.commutator(a, b))
        else:
            centers.append(group.center())
    z_images = {tuple(e): group.center() for e in edges}
    nz_images = [group.element(j, v) for j in range(len(genera)) for v in nz_cycles[j]]
    return TreeExtension(group, z_images, nz_images, centers)
