"""Exact affine representations certifying that certain Burnside-type groups are infinite.

* Quaternionic: two order-4 rotations of R^4 = H (left multiplication by i
  and j) with different fixed points.  Every element whose linear part is
  not +-1 has order 4, while products with linear part 1 are translations.
* Eisenstein: rotations by omega about 0 and about 1 in C = Z[omega]
  satisfy a^3 = b^3 = (ab)^3 = 1 but generate a crystallographic group.

All arithmetic is exact (``fractions.Fraction`` / integer pairs).  A word
``w = g_1 g_2 ... g_k`` acts as the composition ``g_1 o g_2 o ... o g_k``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .words import Word

Quaternion = tuple[Fraction, Fraction, Fraction, Fraction]


def qmul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Quaternion:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def quaternion(a=0, b=0, c=0, d=0) -> Quaternion:
    return (Fraction(a), Fraction(b), Fraction(c), Fraction(d))


ONE = quaternion(1)
QI = quaternion(0, 1)
QJ = quaternion(0, 0, 1)
QK = quaternion(0, 0, 0, 1)


def left_multiplication_matrix(q: Quaternion) -> tuple[tuple[Fraction, ...], ...]:
    basis = [quaternion(1), QI, QJ, QK]
    cols = [qmul(q, e) for e in basis]
    return tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))


@dataclass(frozen=True)
class AffineMap:
    """``x -> linear @ x + translation`` over exact rationals."""

    linear: tuple[tuple[Fraction, ...], ...]
    translation: tuple[Fraction, ...]

    @property
    def dimension(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        lin = tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))
        return cls(lin, tuple(Fraction(0) for _ in range(d)))

    def __call__(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(
            sum((self.linear[i][j] * x[j] for j in range(self.dimension)), Fraction(0)) + self.translation[i]
            for i in range(self.dimension)
        )

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        d = self.dimension
        lin = tuple(
            tuple(sum((self.linear[i][k] * other.linear[k][j] for k in range(d)), Fraction(0)) for j in range(d))
            for i in range(d)
        )
        return AffineMap(lin, self(other.translation))

    def inverse(self) -> "AffineMap":
        inv = _invert(self.linear)
        d = self.dimension
        t = tuple(-sum((inv[i][j] * self.translation[j] for j in range(d)), Fraction(0)) for i in range(d))
        return AffineMap(inv, t)

    def __pow__(self, k: int) -> "AffineMap":
        base = self if k >= 0 else self.inverse()
        out = AffineMap.identity(self.dimension)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self == AffineMap.identity(self.dimension)

    def is_translation(self) -> bool:
        return self.linear == AffineMap.identity(self.dimension).linear

    def linear_sign(self) -> int | None:
        """+1 or -1 when the linear part is plus or minus the identity, else None."""
        ident = AffineMap.identity(self.dimension).linear
        if self.linear == ident:
            return 1
        if self.linear == tuple(tuple(-x for x in row) for row in ident):
            return -1
        return None

    def order(self, limit: int = 12) -> int | None:
        power = self
        for k in range(1, limit + 1):
            if power.is_identity():
                return k
            power = power * self
        return None


def _invert(m: tuple[tuple[Fraction, ...], ...]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def rotation_about(q: Quaternion, center: Quaternion) -> AffineMap:
    """``x -> q (x - center) + center``."""
    lin = left_multiplication_matrix(q)
    qc = qmul(q, center)
    return AffineMap(lin, tuple(c - v for c, v in zip(center, qc)))


@dataclass
class QuaternionWitness:
    g1: AffineMap
    g2: AffineMap

    def generators(self) -> list[AffineMap]:
        return [self.g1, self.g2]

    def ball(self, radius: int) -> dict[AffineMap, Word]:
        """All elements given by words of length at most ``radius``, with a shortest word."""
        gens = self.generators()
        inv = [g.inverse() for g in gens]
        seen: dict[AffineMap, Word] = {AffineMap.identity(4): Word.identity(2)}
        frontier = [(AffineMap.identity(4), Word.identity(2))]
        for _ in range(radius):
            nxt = []
            for elem, word in frontier:
                for i in range(2):
                    for e, m in ((1, gens[i]), (-1, inv[i])):
                        y = elem * m
                        if y not in seen:
                            w = word * Word.generator(2, i, e)
                            seen[y] = w
                            nxt.append((y, w))
            frontier = nxt
        return seen

    def order_sweep(self, radius: int) -> dict:
        """Check that every ball element with linear part other than +-1 has order exactly 4."""
        ball = self.ball(radius)
        checked = 0
        failures = []
        for elem, word in ball.items():
            if elem.linear_sign() is not None:
                continue
            checked += 1
            if elem.order(limit=4) != 4:
                failures.append(str(word))
        return {"radius": radius, "elements": len(ball), "checked": checked, "failures": failures}

    def linear_closure(self) -> set:
        gens = [self.g1.linear, self.g2.linear]
        seen = {AffineMap.identity(4).linear}
        frontier = list(seen)
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    y = (AffineMap(m, (Fraction(0),) * 4) * AffineMap(g, (Fraction(0),) * 4)).linear
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen


def quaternion_witness_group() -> QuaternionWitness:
    """g1: left multiplication by i about 0; g2: left multiplication by j about 1."""
    return QuaternionWitness(rotation_about(QI, quaternion(0)), rotation_about(QJ, ONE))


# Eisenstein integers --------------------------------------------------------

Eis = tuple[int, int]  # x + y*omega, omega^2 = -1 - omega


def eis_mul(p: Eis, q: Eis) -> Eis:
    a, b = p
    c, d = q
    return (a * c - b * d, a * d + b * c - b * d)


def eis_add(p: Eis, q: Eis) -> Eis:
    return (p[0] + q[0], p[1] + q[1])


def eis_neg(p: Eis) -> Eis:
    return (-p[0], -p[1])


OMEGA: Eis = (0, 1)
UNITS: tuple[Eis, ...] = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))


@dataclass(frozen=True)
class EisensteinAffine:
    """``z -> unit * z + translation`` on Z[omega]."""

    unit: Eis
    translation: Eis

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValueError(f"{self.unit} is not a unit of Z[omega]")

    @classmethod
    def identity(cls) -> "EisensteinAffine":
        return cls((1, 0), (0, 0))

    @classmethod
    def rotation_about(cls, unit: Eis, center: Eis) -> "EisensteinAffine":
        return cls(unit, eis_add(center, eis_neg(eis_mul(unit, center))))

    def __call__(self, z: Eis) -> Eis:
        return eis_add(eis_mul(self.unit, z), self.translation)

    def __mul__(self, other: "EisensteinAffine") -> "EisensteinAffine":
        return EisensteinAffine(eis_mul(self.unit, other.unit), self(other.translation))

    def inverse(self) -> "EisensteinAffine":
        inv = next(u for u in UNITS if eis_mul(u, self.unit) == (1, 0))
        return EisensteinAffine(inv, eis_neg(eis_mul(inv, self.translation)))

    def __pow__(self, k: int) -> "EisensteinAffine":
        base = self if k >= 0 else self.inverse()
        out = EisensteinAffine.identity()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self == EisensteinAffine.identity()

    def is_translation(self) -> bool:
        return self.unit == (1, 0)


@dataclass
class EisensteinWitness:
    a: EisensteinAffine
    b: EisensteinAffine

    def generators(self) -> list[EisensteinAffine]:
        return [self.a, self.b]


def eisenstein_witness_group() -> EisensteinWitness:
    """a: multiplication by omega about 0; b: multiplication by omega about 1."""
    return EisensteinWitness(
        EisensteinAffine.rotation_about(OMEGA, (0, 0)),
        EisensteinAffine.rotation_about(OMEGA, (1, 0)),
    )


# relator checks --------------------------------------------------------------


def evaluate(word: Word, maps: Sequence):
    if word.rank != len(maps):
        raise ValueError("need one map per generator")
    out = None
    for g, e in word.syllables:
        piece = maps[g] ** e
        out = piece if out is None else out * piece
    if out is None:
        return maps[0] ** 0
    return out


@dataclass(frozen=True)
class RelatorVerdict:
    passed: bool
    checked: int
    failure: str | None = None
    value: str | None = None

    def as_dict(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "first_failure": self.failure, "value": self.value}


def verify_relators(maps: Sequence, relators: Sequence[Word], names: Sequence[str] | None = None) -> RelatorVerdict:
    from .words import format_word

    for k, r in enumerate(relators):
        val = evaluate(r, maps)
        if not val.is_identity():
            return RelatorVerdict(False, k + 1, format_word(r, names), repr(val))
    return RelatorVerdict(True, len(relators))


def translation_power_check(t, powers: int) -> bool:
    """True when ``t`` is a translation with ``t^k != 1`` for ``1 <= k <= powers``."""
    if not t.is_translation():
        return False
    p = t
    for _ in range(powers):
        if p.is_identity():
            return False
        p = p * t
    return True


def quaternion_report(radius: int = 6) -> dict:
    W = quaternion_witness_group()
    g1, g2 = W.g1, W.g2
    prod4 = (g1 * g2) ** 4
    trans = g1**2 * g2**2
    return {
        "generator_orders": [g1.order(), g2.order()],
        "linear_group_size": len(W.linear_closure()),
        "sweep": W.order_sweep(radius),
        "g1g2_fourth_power": {
            "is_translation": prod4.is_translation(),
            "is_identity": prod4.is_identity(),
            "translation": [str(x) for x in prod4.translation],
        },
        "translation_witness": {
            "word": "a^2 b^2",
            "translation": [str(x) for x in trans.translation],
            "infinite_order_checked_to": 1000 if translation_power_check(trans, 1000) else None,
        },
    }


def eisenstein_report(power_check: int = 1000) -> dict:
    from .words import parse_word

    W = eisenstein_witness_group()
    names = ["a", "b"]
    base = [parse_word(s, names) for s in ("a^3", "b^3", "(ab)^3")]
    extra = parse_word("(a b^2)^3", names)
    comm = evaluate(parse_word("[a,b]", names), W.generators())
    return {
        "g1_relators": verify_relators(W.generators(), base, names).as_dict(),
        "ab2_cubed": verify_relators(W.generators(), [extra], names).as_dict(),
        "commutator_translation": list(comm.translation),
        "commutator_infinite_order_to": power_check if translation_power_check(comm, power_check) else None,
    }


def ball_words(radius: int) -> list[Word]:
    out = []
    for length in range(1, radius + 1):
        for letters in itertools.product((1, -1, 2, -2), repeat=length):
            w = Word.from_letters(2, letters)
            if len(w) == length:
                out.append(w)
    return out
