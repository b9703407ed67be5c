import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fibergroup.burnside3 import B3Element
from fibergroup.fiberquot import Cycle, FiberData, orbit_closure
from fibergroup.shafarevich import (
    AbelianFactor,
    BurnsideFactor,
    DualGraph,
    FreeProductElement,
    component_exponent3_criterion,
    component_hom,
    free_product_infinite_witness,
    free_product_reduce,
    lemma41_scan,
    parse_dual_graph,
    parse_scan_file,
    subgraph_rank,
    two_torus_chain,
)
from fibergroup.words import Word

B23 = BurnsideFactor(2)


def test_rank_examples():
    assert subgraph_rank(DualGraph((1,), (), (0,)), {0}) == 2
    assert subgraph_rank(DualGraph((0,), (), (0, 0, 0)), {0}) == 2
    assert subgraph_rank(DualGraph((1, 1), ((0, 1),), (0,)), {0, 1}) == 4


def test_rank_errors():
    g = DualGraph((1, 1, 1), ((0, 1),))
    with pytest.raises(ValueError):
        subgraph_rank(g, {0, 2})  # disconnected
    with pytest.raises(ValueError):
        subgraph_rank(DualGraph((1, 1), ((0, 1),)), {0, 1})  # nothing leaves
    with pytest.raises(ValueError):
        subgraph_rank(g, set())


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 4))
    genera = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    edges = [(i, i + 1) for i in range(n - 1)]  # keep it connected
    edges += draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3))
    external = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3))
    return genera, edges, external


@settings(max_examples=100)
@given(graphs(), graphs())
def test_rank_additive_under_joining(left, right):
    (g1, e1, x1), (g2, e2, x2) = left, right
    n1 = len(g1)
    r1 = subgraph_rank(DualGraph(tuple(g1), tuple(e1), tuple(x1)), set(range(n1)))
    r2 = subgraph_rank(DualGraph(tuple(g2), tuple(e2), tuple(x2)), set(range(len(g2))))
    joined = DualGraph(
        tuple(g1 + g2),
        tuple(e1) + tuple((u + n1, v + n1) for u, v in e2) + ((0, n1),),
        tuple(x1) + tuple(x + n1 for x in x2),
    )
    assert subgraph_rank(joined, set(range(n1 + len(g2)))) == r1 + r2 + 1


def test_free_product_reduce():
    x = B3Element.generator(2, 0)
    e = FreeProductElement((B23, B23), ((0, x), (0, x.inverse())))
    assert free_product_reduce(e).is_identity()
    y = B3Element.generator(2, 1)
    e = FreeProductElement((B23, B23), ((0, x), (0, x), (1, y), (1, B3Element.identity(2)), (0, y)))
    r = free_product_reduce(e)
    assert [i for i, _ in r.sequence] == [0, 1, 0]
    assert free_product_reduce(r) == r


def test_alternating_growth_to_1000():
    e = FreeProductElement((AbelianFactor(3, 1), AbelianFactor(3, 1)), ((0, (1,)), (1, (2,))))
    p = FreeProductElement(e.factors)
    for k in range(1, 1001):
        p = p * e
        assert len(p) == 2 * k


def test_infinite_witness():
    wit = free_product_infinite_witness([B23, B23])
    assert wit is not None and wit.lengths_ok and wit.checked_to == 100
    assert free_product_infinite_witness([AbelianFactor(1, 1), B23]) is None
    assert free_product_infinite_witness([AbelianFactor(2, 1), AbelianFactor(2, 1)]).lengths_ok
    with pytest.raises(ValueError):
        free_product_infinite_witness([B23])


def test_component_criterion():
    data, graph, parts = two_torus_chain()
    orbit = orbit_closure(data)
    v = component_exponent3_criterion(data, graph, 0, orbit, parts["K1"])
    assert v.kind == "FiniteUpperEvidence" and v.order == 27
    short = FiberData(2, (), data.cycles[1:], punctured=True)
    v = component_exponent3_criterion(short, graph, 0, orbit_closure(short), parts["K1"])
    assert v.kind == "Unknown" and v.bounds["missing_cubes"] == ["a1"]
    annulus = DualGraph((0, 1), ((0, 1), (0, 1)))
    assert component_exponent3_criterion(data, annulus, 0, orbit, [Word.generator(4, 0)]).order == 3
    disk = DualGraph((0, 1), ((0, 1),))
    assert component_exponent3_criterion(data, disk, 0, orbit, []).order == 1


def test_scan_open_fiber():
    data, graph, parts = two_torus_chain(punctured=True)
    hom = component_hom(data, [B23, B23], [0, 1])
    rep = lemma41_scan(data, graph, {0}, {1}, parts, hom)
    assert rep.verdict == "CandidateCounterexample"
    assert rep.union["gate"]["passed"] and rep.union["surjective"]
    assert rep.parts["K1"]["evidence"]["order"] == 27


def test_scan_closed_fiber_gate():
    data, graph, parts = two_torus_chain(punctured=False)
    rep = lemma41_scan(data, graph, {0}, {1}, parts, component_hom(data, [B23, B23], [0, 1]))
    assert rep.verdict == "Inconclusive"
    assert rep.union["gate"]["failing"]["kind"] == "surface"
    # the abelian handle quotients do kill the surface relator
    z = AbelianFactor(3, 2)
    rep = lemma41_scan(data, graph, {0}, {1}, parts, component_hom(data, [z, z], [0, 1]))
    assert rep.verdict == "CandidateCounterexample"


def test_scan_gate_catches_orbit_relator():
    data, graph, parts = two_torus_chain(punctured=True)
    # extra relator a1 a2 whose image 0:x1 * 1:x1 is not trivial
    extra = Cycle(Word.generator(4, 0) * Word.generator(4, 2), 3, 5)
    bad = FiberData(2, data.monodromy_gens, data.cycles + (extra,), True)
    rep = lemma41_scan(bad, graph, {0}, {1}, parts, component_hom(bad, [B23, B23], [0, 1]))
    assert rep.verdict == "Inconclusive"
    assert rep.union["gate"]["failing"]["relator"] == "a1 a2 a1 a2 a1 a2"


def test_scan_errors():
    data, graph, parts = two_torus_chain()
    with pytest.raises(ValueError):
        lemma41_scan(data, graph, {0}, set(), parts, None)
    with pytest.raises(ValueError):
        lemma41_scan(data, graph, {0}, {0}, parts, None)


def test_scan_file():
    text = """
genus: 2
punctured: true
monodromy: sep(1)
cycle: a1 ^3
cycle: b1 ^3
cycle: a1 b1 ^3
cycle: a1 b1^-1 ^3
cycle: a2 ^3
cycle: b2 ^3
cycle: a2 b2 ^3
cycle: a2 b2^-1 ^3
component: g=1
component: g=1
edge: 0 1
generators K1: a1, b1
generators K2: a2, b2
factor: B(2,3)
factor: B(2,3)
map: a1 -> 0.x1
map: b1 -> 0.x2
map: a2 -> 1.x1
map: b2 -> 1.x2
"""
    data, graph, parts, hom = parse_scan_file(text)
    assert graph == parse_dual_graph(text) == DualGraph((1, 1), ((0, 1),))
    assert lemma41_scan(data, graph, {0}, {1}, parts, hom).verdict == "CandidateCounterexample"
