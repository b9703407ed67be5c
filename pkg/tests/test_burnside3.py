import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from fibergroup.burnside3 import (
    B3Element,
    b3_center,
    b3_commutator,
    b3_from_word,
    b3_order,
    four_subset_exponent_check,
    punctured_torus_presentation,
    random_element,
    structure,
)
from fibergroup.fpgroup import Complete, bt_presentation, coset_enumerate
from fibergroup.words import Word


def elements(n):
    return st.lists(st.integers(0, 2), min_size=structure(n).size, max_size=structure(n).size).map(
        lambda v: B3Element.from_vector(n, v)
    )


def test_orders():
    assert [b3_order(n) for n in (1, 2, 3, 4)] == [3, 27, 2187, 3**14]
    with pytest.raises(ValueError):
        b3_order(0)


@pytest.mark.parametrize("n,family", [(2, "pairs"), (3, "triples")])
def test_collector_matches_coset_table(n, family):
    """The regular action from Todd-Coxeter and the collector agree element by element."""
    table = coset_enumerate(bt_presentation(n, 3, family))
    assert table.status == Complete(b3_order(n))
    els = [b3_from_word(r, n) for r in table.representatives()]
    assert len(set(els)) == b3_order(n)
    gens = [B3Element.generator(n, i) for i in range(n)]
    for c, x in enumerate(els):
        for i, gen in enumerate(gens):
            assert x * gen == els[table.table[c][2 * i]]


@settings(max_examples=60)
@given(elements(4), elements(4), elements(4))
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(elements))
def test_exponent_three(x):
    assert (x * x * x).is_identity()
    assert (x * x.inverse()).is_identity()


@settings(max_examples=50)
@given(words(3), words(3))
def test_word_map_is_homomorphism(u, v):
    assert b3_from_word(u * v) == b3_from_word(u) * b3_from_word(v)


def test_commutator_layers():
    x1, x2, x3 = (B3Element.generator(3, i) for i in range(3))
    c = b3_commutator(x1, x2)
    assert c.lin == (0, 0, 0) and c.quad == (1, 0, 0)
    d = b3_commutator(c, x3)
    assert d.lin == (0, 0, 0) and d.quad == (0, 0, 0) and d.cub == (1,)
    # alternating in the indices
    assert b3_commutator(b3_commutator(x2, x1), x3) == d.inverse()


def test_center_of_b23():
    center = b3_center(2)
    assert len(center) == 3
    x1, x2 = B3Element.generator(2, 0), B3Element.generator(2, 1)
    assert b3_commutator(x1, x2) in center


def test_four_subset_check(rng):
    gens = [B3Element.generator(4, i) for i in range(4)]
    assert four_subset_exponent_check(gens, 100, rng).passed
    # a group of exponent 9 fails
    mul = lambda x, y: (x + y) % 9  # noqa: E731
    v = four_subset_exponent_check([1, 3], 50, rng, mul, 0)
    assert not v.passed and v.witness is not None


def test_punctured_torus_quotient():
    p = punctured_torus_presentation()
    a, b = Word.generator(3, 0), Word.generator(3, 1)
    assert coset_enumerate(p).status == Complete(2187)
    assert coset_enumerate(p, [a, b]).status == Complete(81)


def test_random_element_in_range():
    r = random.Random(3)
    for _ in range(20):
        assert all(v in (0, 1, 2) for v in random_element(3, r).vector())
    with pytest.raises(ValueError):
        B3Element(2, (0, 3), (0,), ())
