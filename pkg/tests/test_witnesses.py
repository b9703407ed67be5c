from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from fibergroup.witnesses import (
    AffineMap,
    EisensteinAffine,
    UNITS,
    eis_mul,
    eisenstein_report,
    eisenstein_witness_group,
    evaluate,
    qmul,
    quaternion,
    quaternion_report,
    quaternion_witness_group,
    translation_power_check,
    verify_relators,
)
from fibergroup.words import parse_word

AB = ["a", "b"]


def rels(*texts):
    return [parse_word(t, AB) for t in texts]


def test_quaternion_units():
    i, j, k = quaternion(0, 1), quaternion(0, 0, 1), quaternion(0, 0, 0, 1)
    minus1 = quaternion(-1)
    assert qmul(i, i) == qmul(j, j) == qmul(k, k) == minus1
    assert qmul(i, j) == k and qmul(j, i) == quaternion(0, 0, 0, -1)


def test_quaternion_generators():
    W = quaternion_witness_group()
    assert W.g1.order() == W.g2.order() == 4
    assert verify_relators(W.generators(), rels("a^4", "b^4")).passed
    assert len(W.linear_closure()) == 8


def test_quaternion_sweep():
    sweep = quaternion_witness_group().order_sweep(6)
    assert sweep["checked"] > 200 and sweep["failures"] == []


def test_quaternion_translations():
    W = quaternion_witness_group()
    t = W.g1**2 * W.g2**2
    assert t.is_translation() and not t.is_identity()
    assert translation_power_check(t, 1000)
    # a rotation with linear part k has a fixed point, so its fourth power is trivial
    assert ((W.g1 * W.g2) ** 4).is_identity()


def test_eisenstein_relators():
    W = eisenstein_witness_group()
    gens = W.generators()
    assert verify_relators(gens, rels("a^3", "b^3", "(a b)^3")).passed
    v = verify_relators(gens, rels("(a b^2)^3"))
    assert not v.passed and v.failure == "a b^2 a b^2 a b^2"
    c = evaluate(parse_word("[a,b]", AB), gens)
    assert c.is_translation() and c.translation != (0, 0)
    assert translation_power_check(c, 1000)


def test_eisenstein_units():
    omega = (0, 1)
    assert eis_mul(omega, eis_mul(omega, omega)) == (1, 0)
    assert eis_mul(omega, omega) == (-1, -1)  # omega^2 = -1 - omega


def test_reports():
    assert quaternion_report(4)["linear_group_size"] == 8
    r = eisenstein_report(100)
    assert r["g1_relators"]["passed"] and not r["ab2_cubed"]["passed"]


maps = st.builds(
    EisensteinAffine, st.sampled_from(UNITS), st.tuples(st.integers(-5, 5), st.integers(-5, 5))
)


@given(maps, maps, maps)
def test_eisenstein_associative(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert (f * f.inverse()).is_identity()


fr = st.fractions(min_value=-3, max_value=3, max_denominator=4)
affine = st.builds(
    lambda lin, t: AffineMap(tuple(tuple(r) for r in lin), tuple(t)),
    st.lists(st.lists(fr, min_size=2, max_size=2), min_size=2, max_size=2),
    st.lists(fr, min_size=2, max_size=2),
)


@settings(max_examples=60)
@given(affine, affine, st.lists(fr, min_size=2, max_size=2))
def test_affine_composition(f, g, x):
    assert (f * g)(x) == f(g(x))


@settings(max_examples=40)
@given(affine, affine, affine)
def test_affine_associative(f, g, h):
    assert (f * g) * h == f * (g * h)


def test_affine_inverse():
    f = AffineMap(((Fraction(2), Fraction(1)), (Fraction(1), Fraction(1))), (Fraction(1, 3), Fraction(-2)))
    assert (f * f.inverse()).is_identity() and (f.inverse() * f).is_identity()
