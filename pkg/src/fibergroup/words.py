"""Free group words, conjugacy normal forms and the word literal syntax.

Words are stored as run-length syllables ``(generator, exponent)`` so that
long orbit words (powers produced by repeated twists) stay compact.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

Syllable = tuple[int, int]


@dataclass(frozen=True)
class Word:
    rank: int
    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        prev = None
        for gen, exp in self.syllables:
            if not 0 <= gen < self.rank:
                raise ValueError(f"generator {gen} out of range for rank {self.rank}")
            if exp == 0:
                raise ValueError("zero exponent in syllable")
            if gen == prev:
                raise ValueError("adjacent syllables share a generator")
            prev = gen

    # construction -----------------------------------------------------

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, gen: int, exp: int = 1) -> "Word":
        return free_reduce(rank, [(gen, exp)])

    @classmethod
    def from_letters(cls, rank: int, letters: Iterable[int]) -> "Word":
        """Build from signed 1-based letters: ``+k`` is generator ``k-1``, ``-k`` its inverse."""
        return free_reduce(rank, [(abs(x) - 1, 1 if x > 0 else -1) for x in letters])

    # basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def letters(self) -> list[tuple[int, int]]:
        """Expanded letter list of ``(generator, sign)`` pairs."""
        out = []
        for gen, exp in self.syllables:
            s = 1 if exp > 0 else -1
            out.extend([(gen, s)] * abs(exp))
        return out

    # group operations -------------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def inverse(self) -> "Word":
        return Word(self.rank, tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        out = Word.identity(self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __str__(self) -> str:
        return format_word(self)


def free_reduce(rank: int, syllables: Iterable[Syllable]) -> Word:
    """Freely reduce an arbitrary syllable list (zero exponents allowed)."""
    stack: list[list[int]] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return Word(rank, tuple((g, e) for g, e in stack))


def multiply(u: Word, v: Word) -> Word:
    if u.rank != v.rank:
        raise ValueError(f"rank mismatch: {u.rank} vs {v.rank}")
    if not u.syllables:
        return v
    if not v.syllables:
        return u
    left = list(u.syllables)
    right = list(v.syllables)
    i = 0
    # cancel across the seam; only the boundary can interact
    while left and i < len(right):
        g, e = left[-1]
        h, f = right[i]
        if g != h:
            break
        left.pop()
        if e + f != 0:
            left.append((g, e + f))
            i += 1
            break
        i += 1
    return Word(u.rank, tuple(left) + tuple(right[i:]))


def commutator(u: Word, v: Word) -> Word:
    """``[u, v] = u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def abelianize_vector(w: Word) -> list[int]:
    vec = [0] * w.rank
    for g, e in w.syllables:
        vec[g] += e
    return vec


def apply_map(w: Word, images: Sequence[Word]) -> Word:
    """Substitute generator ``i -> images[i]`` and reduce."""
    if len(images) != w.rank:
        raise ValueError(f"expected {w.rank} images, got {len(images)}")
    target = images[0].rank if images else w.rank
    out = Word.identity(target)
    for g, e in w.syllables:
        out = out * (images[g] ** e)
    return out


def surface_relator(g: int) -> Word:
    """``[a1,b1]...[ag,bg]`` on generators ordered a1, b1, ..., ag, bg."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    rank = 2 * g
    out = Word.identity(rank)
    for i in range(g):
        out = out * commutator(Word.generator(rank, 2 * i), Word.generator(rank, 2 * i + 1))
    return out


def surface_names(g: int) -> list[str]:
    names = []
    for i in range(1, g + 1):
        names += [f"a{i}", f"b{i}"]
    return names


# conjugacy classes ------------------------------------------------------


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(conjugator, core)`` with ``w = conjugator * core * conjugator^-1``."""
    syl = list(w.syllables)
    prefix: list[Syllable] = []
    while len(syl) >= 2 and syl[0][0] == syl[-1][0]:
        g, e0 = syl[0]
        e1 = syl[-1][1]
        prefix.append((g, e0))
        if e0 + e1 == 0:
            syl = syl[1:-1]
        else:
            # g^e0 M g^e1 = g^e0 (M g^(e0+e1)) g^-e0
            syl = syl[1:-1] + [(g, e0 + e1)]
    return free_reduce(w.rank, prefix), Word(w.rank, tuple(syl))


def _letter_code(gen: int, sign: int) -> int:
    # lexicographic order on (generator, sign) with the inverse letter first
    return 2 * gen + (0 if sign < 0 else 1)


def least_rotation(seq: Sequence[int]) -> int:
    """Booth's algorithm: start index of the lexicographically least rotation."""
    n = len(seq)
    if n == 0:
        return 0
    s = list(seq) * 2
    f = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k


def _min_rotation_codes(core: Word) -> tuple[int, ...]:
    codes = [_letter_code(g, s) for g, s in core.letters()]
    k = least_rotation(codes)
    return tuple(codes[k:] + codes[:k])


def _word_from_codes(rank: int, codes: Sequence[int]) -> Word:
    return free_reduce(rank, [(c // 2, 1 if c & 1 else -1) for c in codes])


@dataclass(frozen=True)
class CyclicWord:
    """Conjugacy class of a word; equality and hashing go through ``canonical``."""

    representative: Word
    canonical: Word

    def __eq__(self, other):
        return isinstance(other, CyclicWord) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __len__(self):
        return len(self.canonical)

    def __lt__(self, other: "CyclicWord") -> bool:
        return cyclic_sort_key(self) < cyclic_sort_key(other)

    def __str__(self) -> str:
        return format_word(self.canonical)


def cyclic_normal_form(w: Word, up_to_inverse: bool = False) -> CyclicWord:
    _, core = cyclically_reduce(w)
    codes = _min_rotation_codes(core)
    if up_to_inverse and codes:
        inv_codes = _min_rotation_codes(core.inverse())
        if inv_codes < codes:
            codes = inv_codes
    return CyclicWord(core, _word_from_codes(w.rank, codes))


def cyclic_sort_key(c: CyclicWord) -> tuple:
    codes = [_letter_code(g, s) for g, s in c.canonical.letters()]
    return (len(codes), codes)


def random_word(rank: int, length: int, rng: random.Random) -> Word:
    """Random freely reduced word of exactly ``length`` letters."""
    letters: list[Syllable] = []
    prev = None
    for _ in range(length):
        while True:
            gen = rng.randrange(rank)
            sign = rng.choice((1, -1))
            if prev != (gen, -sign):
                break
        letters.append((gen, sign))
        prev = (gen, sign)
    return free_reduce(rank, letters)


# literal syntax -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z]\d*)|(?P<op>[()\[\],^\-])|(?P<num>\d+))")


class WordSyntaxError(ValueError):
    pass


def default_names(rank: int) -> list[str]:
    if rank > 26:
        raise ValueError("letter names support at most 26 generators")
    return [chr(ord("a") + i) for i in range(rank)]


def parse_word(text: str, names: Sequence[str]) -> Word:
    """Parse a word literal such as ``a b^-2 (ab)^3``, ``-a`` or ``((a,b),c)``.

    Generator tokens are a letter followed by optional digits, so ``ab`` is
    ``a*b`` while ``a1b1`` is ``a1*b1``.  ``(u, v)`` and ``[u, v]`` denote the
    commutator ``u v u^-1 v^-1``.
    """
    index = {n: i for i, n in enumerate(names)}
    rank = len(names)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise WordSyntaxError(f"expected {expected!r} in {text!r}")
        pos += 1
        return tok

    def parse_product(closers) -> Word:
        out = Word.identity(rank)
        while peek() is not None and peek() not in closers:
            out = out * parse_factor()
        return out

    def parse_factor() -> Word:
        negate = False
        if peek() == "-":
            take()
            negate = True
        tok = peek()
        if tok in ("(", "["):
            close = ")" if tok == "(" else "]"
            take()
            first = parse_product({",", close})
            if peek() == ",":
                take()
                second = parse_product({close})
                base = commutator(first, second)
            else:
                base = first
            take(close)
        elif tok is not None and tok[0].isalpha():
            take()
            if tok not in index:
                raise WordSyntaxError(f"unknown generator {tok!r}")
            base = Word.generator(rank, index[tok])
        elif tok == "1":
            take()
            base = Word.identity(rank)
        else:
            raise WordSyntaxError(f"unexpected token {tok!r} in {text!r}")
        if peek() == "^":
            take()
            sign = 1
            if peek() == "-":
                take()
                sign = -1
            num = take()
            if not num.isdigit():
                raise WordSyntaxError(f"bad exponent {num!r}")
            base = base ** (sign * int(num))
        return base.inverse() if negate else base

    word = parse_product(set())
    if pos != len(tokens):
        raise WordSyntaxError(f"trailing input in {text!r}")
    return word


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"cannot tokenize {text[pos:]!r}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


def split_top_level(text: str) -> list[str]:
    """Split a relator list on commas, or on whitespace outside brackets."""
    depth = 0
    parts, cur = [], []
    use_commas = _has_top_level_comma(text)
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        sep = ch == "," if use_commas else ch.isspace()
        if sep and depth == 0:
            if "".join(cur).strip():
                parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        parts.append("".join(cur).strip())
    # whitespace split leaves exponent suffixes such as "^3" glued correctly,
    # but a bare "^-1" after a space belongs to the previous token
    merged: list[str] = []
    for p in parts:
        if p.startswith("^") and merged:
            merged[-1] += p
        else:
            merged.append(p)
    return merged


def _has_top_level_comma(text: str) -> bool:
    depth = 0
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            return True
    return False


def format_word(w: Word, names: Sequence[str] | None = None) -> str:
    if not w.syllables:
        return "1"
    if names is None:
        names = default_names(w.rank) if w.rank <= 26 else [f"x{i}" for i in range(w.rank)]
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in w.syllables)
