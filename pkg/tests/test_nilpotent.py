import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from fibergroup.nilpotent import (
    UCElement,
    closure_size,
    induced_automorphism,
    tree_extension_build,
    uc_element_order,
    uc_from_word,
    uc_order,
)
from fibergroup.monodromy import standard_twists
from fibergroup.words import Word, commutator, surface_relator


@pytest.mark.parametrize("g,N", [(1, 3), (1, 5), (2, 3)])
def test_closure_matches_formula(g, N):
    gens = [UCElement.generator(g, N, i) for i in range(2 * g)]
    assert closure_size(gens, UCElement.identity(g, N)) == uc_order(g, N)


def test_order_values():
    assert uc_order(1, 3) == 9
    assert uc_order(2, 3) == 19683
    with pytest.raises(ValueError):
        uc_order(1, 4)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_surface_relator_dies(g):
    assert uc_from_word(surface_relator(g), g, 3).is_identity()


def test_commutator_coordinate():
    a1, b1 = Word.generator(4, 0), Word.generator(4, 1)
    x = uc_from_word(commutator(a1, b1), 2, 3)
    assert not any(x.v) and x.w == (0, 0, 0, 0, 0, 1)


@settings(max_examples=60)
@given(words(4), words(4))
def test_word_map_is_homomorphism(u, v):
    assert uc_from_word(u * v, 2, 5) == uc_from_word(u, 2, 5) * uc_from_word(v, 2, 5)


@settings(max_examples=80)
@given(st.sampled_from([3, 5, 7]), words(4, 16))
def test_nonzero_abelianization_has_order_N(N, w):
    x = uc_from_word(w, 2, N)
    if any(c % N for c in x.v):
        assert uc_element_order(x) == N
    else:
        assert N % uc_element_order(x) == 0


def test_composite_N_caveat():
    # 3 * e1 in UC_1^9 has order 3, not 9
    x = uc_from_word(Word.generator(2, 0, 3), 1, 9)
    assert uc_element_order(x) == 3


def test_twists_induce_automorphisms():
    for tw in standard_twists(2):
        act = induced_automorphism(tw.images, 2, 3)
        assert act(surface_relator(2)).is_identity()


def test_tree_extension_orders():
    one = tree_extension_build([1], [])
    assert one.group.order() == 8
    two = tree_extension_build([1, 1], [(0, 1)], [[(1, 0)], [(0, 1)]])
    assert two.group.order() == 2**5
    assert len(set(two.centers)) == 1
    assert all(z == two.group.center() and z.order() == 2 for z in two.z_cycle_images.values())
    assert all(x.order() == 2 for x in two.nz_cycle_images)


def test_tree_extension_rejects_bad_input():
    with pytest.raises(ValueError):
        tree_extension_build([1, 1, 1], [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(ValueError):
        tree_extension_build([1], [], [[(1, 0), (0, 1)]])
