import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from fibergroup.fpgroup import (
    AbelianInvariants,
    Complete,
    Overflow,
    Presentation,
    abelian_invariants,
    bt_presentation,
    coset_enumerate,
    format_presentation,
    group_order,
    parse_presentation,
    primitive_family,
)
from fibergroup.words import Word, commutator

KNOWN = {
    "gens: a b\nrels: a^2, b^3, (a b)^2": 6,
    "gens: a b\nrels: a^2, b^3, (a b)^5": 60,
    "gens: a b\nrels: a^2, b^3, (a b)^7, [a,b]^4": 168,
    "gens: a b\nrels: a^3, b^3, (a b)^3, (a b^2)^3": 27,
}


@pytest.mark.parametrize("text,order", sorted(KNOWN.items()))
def test_known_orders(text, order):
    assert group_order(parse_presentation(text)) == Complete(order)


def test_orders_agree_with_sympy():
    F, a, b = free_group("a b")
    G = FpGroup(F, [a**3, b**3, (a * b) ** 3, (a * b**2) ** 3])
    assert G.order() == group_order(parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3, (a b^2)^3")).index


def test_subgroup_index():
    p = parse_presentation("gens: a b\nrels: a^2, b^3, (a b)^5")
    t = coset_enumerate(p, [Word.generator(2, 1)])
    assert t.status == Complete(20)
    reps = t.representatives()
    assert len(reps) == 20
    assert sorted(t.act(0, r) for r in reps) == list(range(20))


def test_g1_overflows():
    p = parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3")
    assert coset_enumerate(p, max_cosets=2000).status == Overflow(2000)


def test_bt_orders():
    assert group_order(bt_presentation(1, 3, "basic")) == Complete(3)
    assert group_order(bt_presentation(2, 3, "pairs")) == Complete(27)
    assert group_order(bt_presentation(3, 3, "triples")) == Complete(2187)


def test_families_are_nested():
    for n in range(1, 5):
        b, p, t = (primitive_family(n, f) for f in ("basic", "pairs", "triples"))
        assert b == p[:n] and p == t[: len(p)]
    with pytest.raises(ValueError):
        primitive_family(2, "quads")


def test_abelian_invariants():
    assert abelian_invariants(parse_presentation("gens: a b\nrels: a^3, b^3, (a b)^3")) == AbelianInvariants(0, (3, 3))
    assert abelian_invariants(parse_presentation("gens: a b c\nrels: a^4, b^6")) == AbelianInvariants(1, (2, 12))
    assert AbelianInvariants(1, (2,)).order() is None
    with pytest.raises(ValueError):
        AbelianInvariants(0, (4, 2))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(-3, 3)), min_size=1, max_size=4))
def test_abelianization_order_matches_commutator_quotient(extra):
    """|G/[G,G]| from Smith form equals the order of G with the commutator killed."""
    a, b = Word.generator(2, 0), Word.generator(2, 1)
    base = [a**3, b**3]
    rels = base + [Word.generator(2, g) ** e for g, e in extra if e]
    inv = abelian_invariants(Presentation.from_words(2, rels))
    ab = group_order(Presentation.from_words(2, rels + [commutator(a, b)]))
    assert ab.index == inv.order()


def test_presentation_roundtrip():
    p = parse_presentation("gens: x y  # comment\nrels: x^5, (x y)^2\nrels: y^2")
    assert parse_presentation(format_presentation(p)) == p


def test_presentation_errors():
    with pytest.raises(ValueError):
        parse_presentation("rels: a^2")
    with pytest.raises(ValueError):
        Presentation(2, ())
