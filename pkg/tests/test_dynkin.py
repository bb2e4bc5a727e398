import pytest
from hypothesis import given, strategies as st

from tilting_atlas.dynkin import (
    DynkinError,
    build_diagram,
    build_quiver,
    coxeter_matrix,
    euler_form,
    parse_quiver,
    positive_roots,
)

TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 5), ("D", 4), ("D", 5), ("E", 6), ("E", 7)]


def brute_roots(d, bound=3):
    from itertools import product

    n = d.rank
    return sorted(
        v for v in product(range(bound + 1), repeat=n) if any(v) and d.tits_form(v) == 1
    )


def test_small_diagrams():
    assert build_diagram("A", 2).edges == [(0, 1)]
    assert build_diagram("A", 1).edges == []
    d4 = build_diagram("D", 4)
    centre = [v for v in range(4) if len(d4.neighbours(v)) == 3]
    assert len(centre) == 1 and len(d4.edges) == 3


@pytest.mark.parametrize("fam,rank", [("D", 3), ("E", 9), ("A", 0), ("B", 2)])
def test_bad_diagrams(fam, rank):
    with pytest.raises(DynkinError):
        build_diagram(fam, rank)


def test_euler_form_a2():
    q = parse_quiver("A2")
    assert euler_form(q, (1, 0), (1, 0)) == 1
    assert euler_form(q, (1, 0), (0, 1)) == -1
    assert euler_form(q, (0, 1), (1, 0)) == 0
    with pytest.raises(DynkinError):
        euler_form(q, (1,), (1, 0))


def test_roots():
    assert positive_roots(build_diagram("A", 2)) == [(0, 1), (1, 0), (1, 1)]
    assert positive_roots(build_diagram("A", 1)) == [(1,)]
    assert len(positive_roots(build_diagram("D", 4))) == 12


@pytest.mark.parametrize("fam,rank", TYPES)
def test_root_count_matches_coxeter_number(fam, rank):
    d = build_diagram(fam, rank)
    roots = positive_roots(d)
    assert len(roots) * 2 == rank * d.coxeter_number()
    if rank <= 5:
        assert roots == brute_roots(d)


def test_parse_forms():
    q = parse_quiver('{"family":"A","rank":2,"arrows":[[1,2]]}')
    assert q == parse_quiver("A2") == parse_quiver({"family": "A", "rank": 2, "arrows": [[1, 2]]})
    assert parse_quiver(q) is q
    assert parse_quiver(q.to_json()) == q
    flipped = build_quiver("A", 2, [[2, 1]])
    assert euler_form(flipped, (0, 1), (1, 0)) == -1
    for bad in ["X2", "", "A", '{"family":"A","rank":2,"arrows":[[1,3]]}']:
        with pytest.raises((DynkinError, ValueError, KeyError)):
            parse_quiver(bad)


def test_coxeter_a2():
    assert [[int(x) for x in r] for r in coxeter_matrix(parse_quiver("A2"))] == [[0, -1], [1, -1]]


vec = st.lists(st.integers(-4, 4), min_size=4, max_size=4)


@given(vec, vec)
def test_symmetrised_euler_is_cartan(x, y):
    for name in ["A4", "D4"]:
        q = parse_quiver(name)
        cartan = q.diagram.cartan()
        sym = sum(x[i] * cartan[i][j] * y[j] for i in range(4) for j in range(4))
        assert euler_form(q, x, y) + euler_form(q, y, x) == sym


@given(vec, vec, vec, st.integers(-3, 3))
def test_euler_bilinear(x, y, z, c):
    q = parse_quiver("D4")
    xz = [a + c * b for a, b in zip(x, z)]
    assert euler_form(q, xz, y) == euler_form(q, x, y) + c * euler_form(q, z, y)
