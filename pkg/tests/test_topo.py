from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from tilting_atlas.topo import (
    FinitePoset,
    SimplicialComplex,
    homology,
    is_contractible_certificate,
    order_complex,
)

RP2 = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3),
]


def chain(k):
    return FinitePoset(range(k), [(i, j) for i in range(k) for j in range(i + 1, k)])


def boolean(k):
    subs = [frozenset(c) for r in range(k + 1) for c in combinations(range(k), r)]
    return FinitePoset.from_leq(subs, lambda a, b: a <= b)


def test_order_complexes():
    assert order_complex(chain(3)).f_vector() == [3, 3, 1]
    assert order_complex(FinitePoset([0, 1], [])).f_vector() == [2]
    b2 = order_complex(boolean(2))
    assert is_contractible_certificate(b2) == "collapsible"


def test_homology_examples():
    circle = SimplicialComplex.from_facets([(0, 1), (1, 2), (0, 2)])
    h = homology(circle)
    assert h.betti == (1, 1) and h.reduced_betti() == (0, 1)
    assert is_contractible_certificate(circle) == "unknown"
    solid = SimplicialComplex.from_facets([(0, 1, 2)])
    assert homology(solid).betti == (1, 0, 0)
    rp2 = homology(SimplicialComplex.from_facets(RP2))
    assert rp2.betti == (1, 0, 0)
    assert rp2.torsion == ((), (2,), ())
    assert not rp2.is_acyclic()
    assert is_contractible_certificate(SimplicialComplex.from_facets(RP2)) == "unknown"


def test_cone_is_collapsible():
    base = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
    cone = SimplicialComplex.from_facets([f + (9,) for f in base])
    assert is_contractible_certificate(cone) == "collapsible"


def test_dunce_like_budget():
    # with no budget the search gives up rather than claim anything
    assert is_contractible_certificate(SimplicialComplex.from_facets(RP2), budget=1) == "unknown"


def test_boolean_recognition():
    assert boolean(3).is_isomorphic_to_boolean(3)
    assert not chain(4).is_isomorphic_to_boolean(2)
    assert not boolean(2).is_isomorphic_to_boolean(3)


def test_poset_basics():
    p = boolean(2)
    assert p.minimal() == [frozenset()] and p.maximal() == [frozenset({0, 1})]
    assert len(p.maximal_chains()) == 2
    assert len(p.covers()) == 4
    assert p.opposite().minimal() == [frozenset({0, 1})]
    with pytest.raises(ValueError):
        FinitePoset([0, 1], [(0, 1), (1, 0)])


def test_json_round_trip():
    c = SimplicialComplex.from_facets(RP2)
    assert SimplicialComplex.from_json(c.to_json()).simplices == c.simplices


facets = st.lists(
    st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True).map(tuple), min_size=1, max_size=7
)


@settings(max_examples=80, deadline=None)
@given(facets)
def test_euler_characteristic(fs):
    c = SimplicialComplex.from_facets(fs)
    h = homology(c)
    assert c.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(h.betti))


@settings(max_examples=60, deadline=None)
@given(facets, facets)
def test_disjoint_union(a, b):
    x, y = SimplicialComplex.from_facets(a), SimplicialComplex.from_facets(b)
    u = x.disjoint_union(y)
    hx, hy, hu = homology(x), homology(y), homology(u)
    n = max(len(hx.betti), len(hy.betti))
    pad = lambda t: list(t) + [0] * (n - len(t))
    assert pad(hu.betti) == [p + q for p, q in zip(pad(hx.betti), pad(hy.betti))]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=12))
def test_order_complex_dimension(pairs):
    p = FinitePoset.from_leq(range(7), lambda a, b: a == b or (a < b and (a, b) in pairs))
    c = order_complex(p)
    longest = max(len(ch) for ch in p.maximal_chains())
    assert c.dimension == longest - 1
