"""Homology monodromy of Lefschetz degenerations and word-level Dehn twists.

Basis of H_1 is ``(a_1, b_1, ..., a_g, b_g)`` with intersection pairing
``(a_i, b_i) = 1``.  The twist along a class ``s`` acts by

    D x = x - (x, s) s,

the single orientation convention used throughout; the unipotency and mod-N
statements checked here do not depend on it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .words import (
    Word,
    abelianize_vector,
    apply_map,
    cyclic_normal_form,
    surface_names,
    surface_relator,
)


def symplectic_form(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


@dataclass(frozen=True)
class HomologyClass:
    g: int
    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) != 2 * self.g:
            raise ValueError(f"expected {2 * self.g} coordinates, got {len(self.coords)}")

    @classmethod
    def of(cls, coords: Sequence[int]) -> "HomologyClass":
        if len(coords) % 2:
            raise ValueError("homology vectors have even length")
        return cls(len(coords) // 2, tuple(int(c) for c in coords))

    @classmethod
    def standard(cls, g: int, name: str) -> "HomologyClass":
        kind, idx = name[0], int(name[1:])
        if kind not in "ab" or not 1 <= idx <= g:
            raise ValueError(f"unknown standard curve {name!r} for genus {g}")
        v = [0] * (2 * g)
        v[2 * (idx - 1) + (kind == "b")] = 1
        return cls(g, tuple(v))

    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def is_zero(self) -> bool:
        return not any(self.coords)


def pairing(x: HomologyClass, y: HomologyClass) -> int:
    if x.g != y.g:
        raise ValueError("classes live in different genera")
    return int(x.array() @ symplectic_form(x.g) @ y.array())


@dataclass(frozen=True)
class MonodromyMatrix:
    g: int
    m: np.ndarray

    def __matmul__(self, other: "MonodromyMatrix") -> "MonodromyMatrix":
        return MonodromyMatrix(self.g, self.m @ other.m)

    def __pow__(self, k: int) -> "MonodromyMatrix":
        if k < 0:
            raise ValueError("negative powers not supported")
        return MonodromyMatrix(self.g, np.linalg.matrix_power(self.m, k))

    def __eq__(self, other):
        return isinstance(other, MonodromyMatrix) and self.g == other.g and np.array_equal(self.m, other.m)

    def __hash__(self):
        return hash((self.g, self.m.tobytes()))

    def apply(self, x: HomologyClass) -> HomologyClass:
        return HomologyClass(self.g, tuple(int(c) for c in self.m @ x.array()))

    def is_symplectic(self) -> bool:
        J = symplectic_form(self.g)
        return bool(np.array_equal(self.m.T @ J @ self.m, J))

    def is_unipotent_of_step_two(self) -> bool:
        n = np.eye(2 * self.g, dtype=np.int64) - self.m
        return not (n @ n).any()

    def tolist(self) -> list[list[int]]:
        return self.m.tolist()


def identity_matrix(g: int) -> MonodromyMatrix:
    return MonodromyMatrix(g, np.eye(2 * g, dtype=np.int64))


def transvection(s: HomologyClass) -> MonodromyMatrix:
    """``D = 1 - s (J s)^T``, i.e. ``(1 - D) x = (x, s) s``."""
    v = s.array()
    Js = symplectic_form(s.g) @ v
    return MonodromyMatrix(s.g, np.eye(2 * s.g, dtype=np.int64) - np.outer(v, Js))


def disjoint_product(cycles: Sequence[HomologyClass], pairwise_disjoint: bool = True) -> MonodromyMatrix:
    """Product of twists along disjoint vanishing cycles.

    Geometric disjointness is the caller's promise; the algebraic necessary
    condition (vanishing pairwise intersection numbers) is checked here.
    """
    if not cycles:
        raise ValueError("need at least one cycle")
    g = cycles[0].g
    if pairwise_disjoint:
        for x, y in itertools.combinations(cycles, 2):
            if pairing(x, y) != 0:
                raise ValueError(f"cycles {x.coords} and {y.coords} intersect algebraically")
    out = identity_matrix(g)
    for s in cycles:
        out = out @ transvection(s)
    return out


def mod_n_action(T: MonodromyMatrix, N: int) -> np.ndarray:
    if N < 2:
        raise ValueError("N must be at least 2")
    return np.mod(T.m, N)


def acts_trivially_mod(T: MonodromyMatrix, N: int) -> bool:
    return bool(np.array_equal(mod_n_action(T, N), np.eye(2 * T.g, dtype=np.int64) % N))


def random_disjoint_cycles(g: int, count: int, rng: random.Random, coeff: int = 3) -> list[HomologyClass]:
    """Random classes spanning an isotropic subspace.

    Integer combinations of ``a_1..a_g`` are moved by a random product of
    standard transvections, which preserves the pairing.
    """
    base = []
    for _ in range(count):
        v = [0] * (2 * g)
        for i in range(g):
            v[2 * i] = rng.randint(-coeff, coeff)
        base.append(HomologyClass(g, tuple(v)))
    M = identity_matrix(g)
    for _ in range(rng.randint(0, 6)):
        name = f"{rng.choice('ab')}{rng.randint(1, g)}"
        M = M @ transvection(HomologyClass.standard(g, name))
    return [M.apply(v) for v in base]


# word-level twists -----------------------------------------------------------


@dataclass(frozen=True)
class TwistAutomorphism:
    g: int
    curve: str
    images: tuple[Word, ...]
    inverse_images: tuple[Word, ...]

    def apply(self, w: Word) -> Word:
        return apply_map(w, self.images)

    def apply_inverse(self, w: Word) -> Word:
        return apply_map(w, self.inverse_images)

    def curve_class(self) -> HomologyClass:
        return HomologyClass.standard(self.g, self.curve)

    def abelianized(self) -> MonodromyMatrix:
        cols = [abelianize_vector(w) for w in self.images]
        return MonodromyMatrix(self.g, np.array(cols, dtype=np.int64).T)


def twist_automorphism(g: int, curve: str) -> TwistAutomorphism:
    """Dehn twist along a standard curve ``a_i`` or ``b_i``.

    Along ``a_i``: ``b_i -> b_i a_i``.  Along ``b_i``: ``a_i -> a_i b_i^-1``.
    All other generators are fixed.  Both preserve ``[a_i, b_i]`` letter for
    letter, and abelianize to ``transvection`` of the curve class.
    """
    names = surface_names(g)
    if curve not in names:
        raise ValueError(f"unsupported curve {curve!r}; standard curves are {names}")
    rank = 2 * g
    gens = [Word.generator(rank, i) for i in range(rank)]
    images = list(gens)
    inverse = list(gens)
    i = names.index(curve)
    if curve[0] == "a":
        a, b = gens[i], gens[i + 1]
        images[i + 1] = b * a
        inverse[i + 1] = b * a.inverse()
    else:
        a, b = gens[i - 1], gens[i]
        images[i - 1] = a * b.inverse()
        inverse[i - 1] = a * b
    return TwistAutomorphism(g, curve, tuple(images), tuple(inverse))


def standard_twists(g: int) -> list[TwistAutomorphism]:
    return [twist_automorphism(g, name) for name in surface_names(g)]


def preserves_relator(images: Sequence[Word], g: int) -> bool:
    """Admissibility: the surface relator goes to a conjugate of itself or its inverse."""
    rel = surface_relator(g)
    img = apply_map(rel, images)
    return cyclic_normal_form(img, up_to_inverse=True) == cyclic_normal_form(rel, up_to_inverse=True)


def unipotency_report(cycles: Sequence[HomologyClass], N_values: Sequence[int] = (2, 3, 4, 5, 7)) -> dict:
    T = disjoint_product(cycles)
    return {
        "g": T.g,
        "cycles": [list(c.coords) for c in cycles],
        "matrix": T.tolist(),
        "symplectic": T.is_symplectic(),
        "unipotent_step_two": T.is_unipotent_of_step_two(),
        "trivial_mod_N_after_base_change": {str(N): acts_trivially_mod(T**N, N) for N in N_values},
    }
