"""Normal forms in the free Burnside group B(n, 3).

B(n, 3) is nilpotent of class at most 3 with polycyclic generating sequence

    x_i (0 <= i < n),  c_ij = [x_i, x_j] (i < j),  d_ijk = [c_ij, x_k] (i < j < k)

where ``[u, v] = u v u^-1 v^-1``.  Every generator has order 3, the d's are
central, ``[c_ij, x_i] = [c_ij, x_j] = 1`` and ``[[x_p, x_q], x_r]`` is
alternating in ``(p, q, r)``.  Conjugation relations ``g_j^{g_k} = g_k^-1 g_j g_k``
(k < j) used by the collector:

    x_j^{x_i}  = x_j c_ij^2
    c_ij^{x_k} = c_ij d^{+-1}      (sign of the permutation sorting (i, j, k))
    everything else commutes.

Products are computed by collection from the left.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Sequence

from .words import Word


def b3_order(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return 3 ** (n + comb(n, 2) + comb(n, 3))


def _perm_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class B3Structure:
    """Frozen collection tables for B(n, 3)."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.pairs = list(itertools.combinations(range(n), 2))
        self.triples = list(itertools.combinations(range(n), 3))
        self.pair_index = {p: n + i for i, p in enumerate(self.pairs)}
        self.triple_index = {t: n + len(self.pairs) + i for i, t in enumerate(self.triples)}
        self.size = n + len(self.pairs) + len(self.triples)
        # conj[j][k]: g_j^{g_k} as a list of (generator, exponent), or None if they commute
        self.conj: list[list[list[tuple[int, int]] | None]] = [[None] * self.size for _ in range(self.size)]
        for i, j in self.pairs:
            self.conj[j][i] = [(j, 1), (self.pair_index[(i, j)], 2)]
        for (i, j), pos in self.pair_index.items():
            for k in range(n):
                d = self.triple_term(i, j, k)
                if d is not None:
                    gen, exp = d
                    self.conj[pos][k] = [(pos, 1), (gen, exp)]
        self.commutes_after = [
            all(self.conj[j][k] is None for j in range(k + 1, self.size)) for k in range(self.size)
        ]

    def triple_term(self, i: int, j: int, k: int) -> tuple[int, int] | None:
        """``[[x_i, x_j], x_k]`` as ``(generator, exponent)``; None when trivial."""
        if len({i, j, k}) < 3:
            return None
        sign = _perm_sign((i, j, k))
        return self.triple_index[tuple(sorted((i, j, k)))], 1 if sign > 0 else 2

    def collect(self, vec: list[int], gens: Sequence[int]) -> list[int]:
        """Multiply the normal form ``vec`` on the right by the generator word ``gens``."""
        vec = list(vec)
        stack = list(reversed(gens))
        size = self.size
        conj = self.conj
        while stack:
            k = stack.pop()
            if self.commutes_after[k]:
                vec[k] = (vec[k] + 1) % 3
                continue
            pushed: list[int] = []
            for j in range(k + 1, size):
                e = vec[j]
                if not e:
                    continue
                vec[j] = 0
                rel = conj[j][k]
                piece = [j] if rel is None else [g for g, x in rel for _ in range(x)]
                pushed.extend(piece * e)
            vec[k] = (vec[k] + 1) % 3
            stack.extend(reversed(pushed))
        return vec

    def normal_word(self, vec: Sequence[int]) -> list[int]:
        return [g for g, e in enumerate(vec) for _ in range(e)]


@lru_cache(maxsize=None)
def structure(n: int) -> B3Structure:
    return B3Structure(n)


@dataclass(frozen=True)
class B3Element:
    n: int
    lin: tuple[int, ...]
    quad: tuple[int, ...]
    cub: tuple[int, ...]

    def __post_init__(self):
        s = structure(self.n)
        if len(self.lin) != self.n or len(self.quad) != len(s.pairs) or len(self.cub) != len(s.triples):
            raise ValueError("layer sizes do not match n")
        if any(v not in (0, 1, 2) for v in self.lin + self.quad + self.cub):
            raise ValueError("entries must lie in {0, 1, 2}")

    @classmethod
    def identity(cls, n: int) -> "B3Element":
        s = structure(n)
        return cls(n, (0,) * n, (0,) * len(s.pairs), (0,) * len(s.triples))

    @classmethod
    def from_vector(cls, n: int, vec: Sequence[int]) -> "B3Element":
        s = structure(n)
        m = n + len(s.pairs)
        return cls(n, tuple(vec[:n]), tuple(vec[n:m]), tuple(vec[m:]))

    @classmethod
    def generator(cls, n: int, i: int) -> "B3Element":
        vec = [0] * structure(n).size
        vec[i] = 1
        return cls.from_vector(n, vec)

    def vector(self) -> list[int]:
        return list(self.lin + self.quad + self.cub)

    def is_identity(self) -> bool:
        return not any(self.vector())

    def __mul__(self, other: "B3Element") -> "B3Element":
        return b3_multiply(self, other)

    def inverse(self) -> "B3Element":
        s = structure(self.n)
        word = s.normal_word(self.vector())
        # g^-1 = g^2 for every pc generator
        inv = [g for g in reversed(word) for _ in range(2)]
        return B3Element.from_vector(self.n, s.collect([0] * s.size, inv))

    def __pow__(self, k: int) -> "B3Element":
        k %= 3
        out = B3Element.identity(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __str__(self) -> str:
        s = structure(self.n)
        parts = []
        for i, e in enumerate(self.lin):
            if e:
                parts.append(f"x{i + 1}^{e}")
        for (i, j), e in zip(s.pairs, self.quad):
            if e:
                parts.append(f"c{i + 1}{j + 1}^{e}")
        for (i, j, k), e in zip(s.triples, self.cub):
            if e:
                parts.append(f"d{i + 1}{j + 1}{k + 1}^{e}")
        return " ".join(parts) or "1"


def b3_multiply(u: B3Element, v: B3Element) -> B3Element:
    if u.n != v.n:
        raise ValueError(f"rank mismatch: {u.n} vs {v.n}")
    s = structure(u.n)
    return B3Element.from_vector(u.n, s.collect(u.vector(), s.normal_word(v.vector())))


def b3_commutator(u: B3Element, v: B3Element) -> B3Element:
    return u * v * u.inverse() * v.inverse()


def b3_from_word(w: Word, n: int | None = None) -> B3Element:
    n = w.rank if n is None else n
    if w.rank != n:
        raise ValueError(f"word rank {w.rank} does not match n={n}")
    s = structure(n)
    gens = [g for g, e in w.syllables for _ in range(e % 3)]
    return B3Element.from_vector(n, s.collect([0] * s.size, gens))


def random_element(n: int, rng: random.Random) -> B3Element:
    s = structure(n)
    return B3Element.from_vector(n, [rng.randrange(3) for _ in range(s.size)])


def all_elements(n: int):
    s = structure(n)
    for vec in itertools.product(range(3), repeat=s.size):
        yield B3Element.from_vector(n, vec)


# exponent checks -------------------------------------------------------------


@dataclass(frozen=True)
class ExponentVerdict:
    passed: bool
    checked: int
    subset: tuple[int, ...] | None = None
    witness: tuple[int, ...] | None = None

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "subset": list(self.subset) if self.subset is not None else None,
            "witness_word": list(self.witness) if self.witness is not None else None,
        }


def four_subset_exponent_check(
    generators: Sequence,
    samples: int,
    rng: random.Random,
    multiply: Callable | None = None,
    identity=None,
    max_length: int = 8,
) -> ExponentVerdict:
    """Sample products of at most four generators and test their cubes.

    ``generators`` are elements of any group given by ``multiply`` and
    ``identity`` (defaults: B3Element arithmetic).  The witness is reported
    as the list of generator positions making up the offending product.
    """
    if not generators:
        return ExponentVerdict(True, 0)
    if multiply is None:
        multiply = b3_multiply
    if identity is None:
        identity = B3Element.identity(generators[0].n)
    idx = list(range(len(generators)))
    checked = 0
    for _ in range(samples):
        subset = tuple(sorted(rng.sample(idx, min(4, len(idx)))))
        length = rng.randint(1, max_length)
        word = tuple(rng.choice(subset) for _ in range(length))
        elem = identity
        for i in word:
            elem = multiply(elem, generators[i])
        cube = multiply(multiply(elem, elem), elem)
        checked += 1
        if cube != identity:
            return ExponentVerdict(False, checked, subset, word)
    return ExponentVerdict(True, checked)


# the twice-punctured torus quotient -----------------------------------------


def b3_word(el: B3Element, gens: Sequence[Word]) -> Word:
    """Spell the normal form of ``el`` over free-group words standing for ``x_i``."""
    s = structure(el.n)
    rank = gens[0].rank
    pc = list(gens)
    for i, j in s.pairs:
        pc.append(pc[i] * pc[j] * pc[i].inverse() * pc[j].inverse())
    for i, j, k in s.triples:
        c = pc[s.pair_index[(i, j)]]
        pc.append(c * pc[k] * c.inverse() * pc[k].inverse())
    out = Word.identity(rank)
    for g in s.normal_word(el.vector()):
        out = out * pc[g]
    return out


def b3_center(n: int) -> list[B3Element]:
    els = list(all_elements(n))
    gens = [B3Element.generator(n, i) for i in range(n)]
    return [e for e in els if all(e * x == x * e for x in gens)]


def punctured_torus_presentation():
    """Generators ``a, b, r``: ``a, b`` span B(2,3) and ``r`` is the figure-eight loop.

    Relators: the B(2,3) relators on ``a, b``; ``(w r)^3`` for every
    noncentral ``w`` of B(2,3) (those products are simple loops); and
    ``(c^-1 r)^3`` with ``c = [a, b]``, since ``c^-1 r`` is the simple loop
    around one puncture.
    """
    from .fpgroup import Presentation, bt_relators

    a, b, r = (Word.generator(3, i) for i in range(3))
    rels = [Word(3, c.representative.syllables) for c in bt_relators(2, 3, "pairs")]
    center = b3_center(2)
    for el in all_elements(2):
        if el not in center:
            rels.append((b3_word(el, [a, b]) * r) ** 3)
    c = a * b * a.inverse() * b.inverse()
    rels.append((c.inverse() * r) ** 3)
    return Presentation.from_words(3, rels, ("a", "b", "r"))
