"""Finitely presented groups and Todd-Coxeter coset enumeration.

Enumeration is HLT (relator-based) with a lookahead pass when the table
fills up.  Results are three-valued: a ``Complete`` table proves the index,
an ``Overflow`` proves nothing.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Sequence

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.domains import ZZ

from .words import (
    CyclicWord,
    Word,
    abelianize_vector,
    cyclic_normal_form,
    default_names,
    parse_word,
    split_top_level,
)

DEFAULT_MAX_COSETS = 10**6


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[CyclicWord, ...]
    names: tuple[str, ...] = ()
    free: bool = False

    def __post_init__(self):
        if not self.relators and not self.free:
            raise ValueError("presentation without relators must be marked free")
        if not self.names:
            object.__setattr__(self, "names", tuple(default_names(self.rank)))
        for r in self.relators:
            if r.canonical.rank != self.rank:
                raise ValueError("relator rank does not match presentation rank")

    @classmethod
    def from_words(cls, rank: int, relators: Sequence[Word], names: Sequence[str] = ()) -> "Presentation":
        rels = tuple(cyclic_normal_form(r) for r in relators if not r.is_identity())
        return cls(rank, rels, tuple(names), free=not rels)

    def relator_words(self) -> list[Word]:
        return [r.representative for r in self.relators]


@dataclass(frozen=True)
class Complete:
    index: int


@dataclass(frozen=True)
class Overflow:
    max_cosets: int


@dataclass
class CosetTable:
    """Coset table over the columns ``x0, x0^-1, x1, x1^-1, ...``.

    ``table[c][col]`` is the coset reached from ``c``; coset 0 is the subgroup.
    Only meaningful as a group action when ``status`` is ``Complete``.
    """

    presentation: Presentation
    subgroup_generators: list[Word]
    table: list[list[int]]
    status: Complete | Overflow
    cosets_used: int = 0
    runtime_ms: float = 0.0

    @property
    def complete(self) -> bool:
        return isinstance(self.status, Complete)

    def act(self, coset: int, w: Word) -> int:
        for g, e in w.syllables:
            col = 2 * g if e > 0 else 2 * g + 1
            for _ in range(abs(e)):
                coset = self.table[coset][col]
        return coset

    def representatives(self) -> list[Word]:
        """Schreier transversal: a word for each coset, found breadth first."""
        rank = self.presentation.rank
        reps: list[Word | None] = [None] * len(self.table)
        reps[0] = Word.identity(rank)
        queue = [0]
        for c in queue:
            for col in range(2 * rank):
                d = self.table[c][col]
                if reps[d] is None:
                    step = Word.generator(rank, col // 2, 1 if col % 2 == 0 else -1)
                    reps[d] = reps[c] * step
                    queue.append(d)
        return reps  # type: ignore[return-value]


class _Enumerator:
    """HLT with lookahead; dead cosets are tracked through a union-find forest."""

    def __init__(self, pres: Presentation, subgroup: Sequence[Word], max_cosets: int):
        self.rank = pres.rank
        self.ncols = 2 * pres.rank
        self.max_cosets = max_cosets
        self.rels = [self._cols(w) for w in pres.relator_words()]
        self.subgens = [self._cols(w) for w in subgroup if not w.is_identity()]
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.live = 1
        self.total = 1
        self.queue: list[int] = []

    def _cols(self, w: Word) -> list[int]:
        out = []
        for g, e in w.syllables:
            out.extend([2 * g if e > 0 else 2 * g + 1] * abs(e))
        return out

    @staticmethod
    def inv(col: int) -> int:
        return col ^ 1

    def find(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def new_coset(self, c: int, col: int) -> int:
        if self.live >= self.max_cosets:
            raise _Full
        n = len(self.table)
        self.table.append([-1] * self.ncols)
        self.parent.append(n)
        self.live += 1
        self.total += 1
        self.table[c][col] = n
        self.table[n][col ^ 1] = c
        return n

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        t = self.table
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] >= 0:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] >= 0:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.new_coset(f, word[i])

    def scan(self, c: int, word: list[int]) -> None:
        """Lookahead scan: deduce or collapse, never define."""
        t = self.table
        f, i = c, 0
        b, j = c, len(word) - 1
        while i <= j and t[f][word[i]] >= 0:
            f = t[f][word[i]]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and t[b][word[j] ^ 1] >= 0:
            b = t[b][word[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            t[f][word[i]] = b
            t[b][word[i] ^ 1] = f

    def merge(self, k: int, l: int) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        self.parent[l] = k
        self.live -= 1
        self.queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        self.merge(a, b)
        qi = 0
        while qi < len(self.queue):
            e = self.queue[qi]
            qi += 1
            row = t[e]
            for col in range(self.ncols):
                f = row[col]
                if f < 0:
                    continue
                t[f][col ^ 1] = -1
                e1 = self.find(e)
                f1 = self.find(f)
                if t[e1][col] >= 0:
                    self.merge(f1, t[e1][col])
                elif t[f1][col ^ 1] >= 0:
                    self.merge(e1, t[f1][col ^ 1])
                else:
                    t[e1][col] = f1
                    t[f1][col ^ 1] = e1
        self.queue.clear()

    def lookahead(self) -> None:
        c = 0
        while c < len(self.table):
            if self.alive(c):
                for r in self.rels:
                    self.scan(c, r)
                    if not self.alive(c):
                        break
            c += 1

    def run(self) -> bool:
        try:
            for h in self.subgens:
                self.scan_and_fill(0, h)
        except _Full:
            self.lookahead()
            if self.live >= self.max_cosets:
                return False
            return self.run()
        c = 0
        while c < len(self.table):
            if self.alive(c):
                try:
                    for r in self.rels:
                        if not self.alive(c):
                            break
                        self.scan_and_fill(c, r)
                    if self.alive(c):
                        for col in range(self.ncols):
                            if self.table[c][col] < 0:
                                self.new_coset(c, col)
                except _Full:
                    self.lookahead()
                    if self.live >= self.max_cosets:
                        return False
                    # the current coset restarts its scans
                    continue
            c += 1
        return True

    def compact(self) -> list[list[int]]:
        """Renumber live cosets by first appearance in a breadth-first sweep."""
        order = {0: 0}
        queue = [0]
        for c in queue:
            for col in range(self.ncols):
                d = self.table[c][col]
                if d not in order:
                    order[d] = len(order)
                    queue.append(d)
        out = [[0] * self.ncols for _ in queue]
        for c in queue:
            out[order[c]] = [order[d] for d in self.table[c]]
        return out


class _Full(Exception):
    pass


def coset_enumerate(
    p: Presentation, subgroup: Sequence[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS
) -> CosetTable:
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    start = time.perf_counter()
    en = _Enumerator(p, subgroup, max_cosets)
    ok = en.run()
    elapsed = (time.perf_counter() - start) * 1000
    if ok:
        table = en.compact()
        return CosetTable(p, list(subgroup), table, Complete(len(table)), en.total, elapsed)
    return CosetTable(p, list(subgroup), [], Overflow(max_cosets), en.total, elapsed)


def group_order(p: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> Complete | Overflow:
    return coset_enumerate(p, (), max_cosets).status


# abelianization ------------------------------------------------------------


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")
        if any(d <= 1 for d in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    def order(self) -> int | None:
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out


def abelian_invariants(p: Presentation) -> AbelianInvariants:
    rows = [abelianize_vector(w) for w in p.relator_words()]
    if not rows:
        return AbelianInvariants(p.rank)
    factors = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [d for d in factors if d != 0]
    return AbelianInvariants(p.rank - len(nonzero), tuple(d for d in nonzero if d != 1))


# curated Burnside-type relator families ------------------------------------

FAMILIES = ("basic", "pairs", "triples")


def primitive_family(n: int, family: str) -> list[Word]:
    """Curated primitive words of the free group of rank ``n``.

    ``basic``: the generators.  ``pairs`` adds ``x_i x_j^{+-1}`` for ``i<j``.
    ``triples`` adds, for ``i<j<k``, both cyclic orders
    ``x_i x_j x_k^{+-1}`` and ``x_i x_k x_j^{+-1}``; one orientation alone
    leaves a group of order 3^8 at ``n=3``.
    Every word is part of a free basis, so its powers are genuine
    Burnside-type relators.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {FAMILIES}")
    if n < 1:
        raise ValueError("n must be positive")
    x = [Word.generator(n, i) for i in range(n)]
    out = list(x)
    if family in ("pairs", "triples"):
        for i, j in itertools.combinations(range(n), 2):
            out += [x[i] * x[j], x[i] * x[j].inverse()]
    if family == "triples":
        for i, j, k in itertools.combinations(range(n), 3):
            for p, q in ((j, k), (k, j)):
                out += [x[i] * x[p] * x[q], x[i] * x[p] * x[q].inverse()]
    return out


def bt_relators(n: int, m: int, family: str = "pairs") -> list[CyclicWord]:
    if m < 2:
        raise ValueError("exponent m must be at least 2")
    return [cyclic_normal_form(w**m) for w in primitive_family(n, family)]


def bt_presentation(n: int, m: int, family: str = "pairs") -> Presentation:
    rels = tuple(bt_relators(n, m, family))
    return Presentation(n, rels, tuple(default_names(n)))


# text format ---------------------------------------------------------------


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a b c`` / ``rels: a^3 b^3 (a b)^3`` with ``#`` comments."""
    names: list[str] | None = None
    rel_texts: list[str] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        key = key.strip().lower()
        if key in ("gens", "generators"):
            names = value.split()
        elif key in ("rels", "relators"):
            rel_texts += split_top_level(value)
        else:
            raise ValueError(f"unrecognised line: {raw!r}")
    if not names:
        raise ValueError("presentation needs a 'gens:' line")
    words = [parse_word(t, names) for t in rel_texts]
    return Presentation.from_words(len(names), words, names)


def format_presentation(p: Presentation) -> str:
    from .words import format_word

    rels = ", ".join(format_word(w, p.names) for w in p.relator_words())
    return f"gens: {' '.join(p.names)}\nrels: {rels}\n"
