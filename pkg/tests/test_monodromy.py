import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import words
from fibergroup.monodromy import (
    HomologyClass,
    acts_trivially_mod,
    disjoint_product,
    pairing,
    preserves_relator,
    random_disjoint_cycles,
    standard_twists,
    transvection,
    twist_automorphism,
    unipotency_report,
)
from fibergroup.words import abelianize_vector


def test_transvection_g1():
    assert transvection(HomologyClass.standard(1, "a1")).tolist() == [[1, 1], [0, 1]]
    assert transvection(HomologyClass.standard(1, "b1")).tolist() == [[1, 0], [-1, 1]]


def test_transvection_formula():
    s = HomologyClass.of([1, 2, 0, 1])
    x = HomologyClass.of([3, -1, 2, 5])
    Dx = transvection(s).apply(x)
    assert list(Dx.coords) == [a - pairing(x, s) * b for a, b in zip(x.coords, s.coords)]


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(0, 10**6))
def test_laws_on_random_disjoint_cycles(g, seed):
    rng = random.Random(seed)
    cycles = random_disjoint_cycles(g, rng.randint(1, g), rng)
    T = disjoint_product(cycles)
    assert T.is_symplectic()
    assert T.is_unipotent_of_step_two()
    for N in (2, 3, 4, 5, 7):
        assert acts_trivially_mod(T**N, N)


def test_intersecting_cycles_rejected():
    with pytest.raises(ValueError):
        disjoint_product([HomologyClass.standard(1, "a1"), HomologyClass.standard(1, "b1")])


@pytest.mark.parametrize("g", [1, 2, 3])
def test_twists_square(g):
    rng = random.Random(g)
    from fibergroup.words import random_word

    for tw in standard_twists(g):
        assert preserves_relator(tw.images, g)
        T = tw.abelianized()
        assert T == transvection(tw.curve_class())
        for _ in range(100):
            w = random_word(2 * g, rng.randint(0, 20), rng)
            assert abelianize_vector(tw.apply(w)) == list(T.m @ np.array(abelianize_vector(w)))
            assert tw.apply_inverse(tw.apply(w)) == w


@given(words(4))
def test_twist_inverse(w):
    tw = twist_automorphism(2, "b2")
    assert tw.apply(tw.apply_inverse(w)) == w


def test_unknown_curve():
    with pytest.raises(ValueError):
        twist_automorphism(1, "a2")


def test_report():
    rep = unipotency_report([HomologyClass.standard(2, "a1"), HomologyClass.standard(2, "a2")])
    assert rep["symplectic"] and rep["unipotent_step_two"]
    assert all(rep["trivial_mod_N_after_base_change"].values())
