import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from fibergroup.words import (
    CyclicWord,
    Word,
    WordSyntaxError,
    abelianize_vector,
    apply_map,
    commutator,
    cyclic_normal_form,
    cyclically_reduce,
    format_word,
    least_rotation,
    multiply,
    parse_word,
    surface_names,
    surface_relator,
)

NAMES = ["a", "b", "c"]


def brute_cyclic_class(w: Word, up_to_inverse=False):
    """Minimum over every rotation of the cyclic core, by direct enumeration."""
    _, core = cyclically_reduce(w)
    cands = [core] + ([core.inverse()] if up_to_inverse else [])
    best = None
    for c in cands:
        letters = c.letters()
        for k in range(max(1, len(letters))):
            rot = letters[k:] + letters[:k]
            key = [2 * g + (0 if s < 0 else 1) for g, s in rot]
            if best is None or key < best:
                best = key
    return tuple(best)


def key(c: CyclicWord):
    return tuple(2 * g + (0 if s < 0 else 1) for g, s in c.canonical.letters())


def test_parse_examples():
    a, b = Word.generator(3, 0), Word.generator(3, 1)
    assert parse_word("ab", NAMES) == a * b
    assert parse_word("a^-2 b", NAMES) == a**-2 * b
    assert parse_word("[a,b]", NAMES) == commutator(a, b)
    assert parse_word("(a,b)", NAMES) == commutator(a, b)
    assert parse_word("(a b^2)^3", NAMES) == (a * b * b) ** 3
    assert parse_word("1", NAMES).is_identity()
    names = surface_names(2)
    assert parse_word("a1b1", names) == Word.generator(4, 0) * Word.generator(4, 1)


@pytest.mark.parametrize("bad", ["a^", "(a b", "x", "a)"])
def test_parse_errors(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad, NAMES)


def test_rank_mismatch():
    with pytest.raises(ValueError):
        multiply(Word.generator(2, 0), Word.generator(3, 0))


def test_surface_relator():
    assert format_word(surface_relator(2), surface_names(2)) == "a1 b1 a1^-1 b1^-1 a2 b2 a2^-1 b2^-1"
    with pytest.raises(ValueError):
        surface_relator(0)


@given(words(3), words(3), words(3))
def test_group_axioms(u, v, w):
    assert (u * v) * w == u * (v * w)
    assert (u * u.inverse()).is_identity()
    assert u * Word.identity(3) == u


@given(words(3))
def test_format_parse_roundtrip(w):
    assert parse_word(format_word(w, NAMES), NAMES) == w


@given(words(3, 10))
def test_cyclic_normal_form_matches_brute_force(w):
    assert key(cyclic_normal_form(w)) == brute_cyclic_class(w)
    assert key(cyclic_normal_form(w, up_to_inverse=True)) == brute_cyclic_class(w, True)


@given(words(3), words(3))
def test_conjugates_share_normal_form(w, x):
    assert cyclic_normal_form(x * w * x.inverse()) == cyclic_normal_form(w)
    assert cyclic_normal_form(w.inverse(), True) == cyclic_normal_form(w, True)


@given(words(3))
def test_cyclically_reduce_conjugator(w):
    conj, core = cyclically_reduce(w)
    assert conj * core * conj.inverse() == w
    if len(core.syllables) >= 2:
        assert core.syllables[0][0] != core.syllables[-1][0]


@given(st.lists(st.integers(0, 3), max_size=12))
def test_least_rotation(seq):
    k = least_rotation(seq)
    rots = [seq[i:] + seq[:i] for i in range(len(seq))] or [[]]
    assert seq[k:] + seq[:k] == min(rots)


@given(words(2), words(2))
def test_abelianization_is_homomorphism(u, v):
    s = [x + y for x, y in zip(abelianize_vector(u), abelianize_vector(v))]
    assert abelianize_vector(u * v) == s


@settings(max_examples=50)
@given(words(2), words(2), words(2))
def test_apply_map_is_homomorphism(u, v, img):
    images = [img, Word.generator(2, 0) * img]
    assert apply_map(u * v, images) == apply_map(u, images) * apply_map(v, images)
    with pytest.raises(ValueError):
        apply_map(u, [img])
