import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dpcolor.errors import ResourceLimitError
from dpcolor.graph import (
    chromatic_number,
    complete,
    complete_bipartite,
    cycle,
    degeneracy,
    empty,
    join,
    make_graph,
    min_degree,
    path,
)
from strategies import graphs


def test_make_graph_empty():
    g = make_graph(0, [])
    assert g.n == 0 and g.m == 0


def test_make_graph_cycle():
    g = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g.m == 4
    assert g.edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert g.neighbors(0) == {1, 3}


@pytest.mark.parametrize(
    "n, edges, msg",
    [
        (3, [(0, 0)], "loop"),
        (3, [(0, 3)], "outside"),
        (3, [(0, 1), (1, 0)], "duplicate"),
        (-1, [], "nonnegative"),
    ],
)
def test_make_graph_rejects(n, edges, msg):
    with pytest.raises(ValueError, match=msg):
        make_graph(n, edges)


def test_join_identity():
    assert join(cycle(4), 0) == cycle(4)


def test_join_wheel():
    w = join(cycle(4), 1)
    assert (w.n, w.m) == (5, 8)
    assert w.neighbors(4) == {0, 1, 2, 3}


def test_join_k33():
    j = join(complete_bipartite(3, 3), 2)
    # m + s*n + s(s-1)/2
    assert (j.n, j.m) == (8, 9 + 2 * 6 + 1)


def test_constructors():
    k33 = complete_bipartite(3, 3)
    assert (k33.n, k33.m) == (6, 9)
    assert k33.neighbors(0) == {3, 4, 5}
    assert complete(4).m == 6
    c5 = cycle(5)
    assert c5.m == 5 and all(c5.degree(v) == 2 for v in c5.vertices())
    with pytest.raises(ValueError):
        cycle(2)


@pytest.mark.parametrize(
    "g, chi",
    [
        (complete_bipartite(3, 3), 2),
        (cycle(5), 3),
        (empty(0), 0),
        (empty(3), 1),
        (complete(5), 5),
    ],
)
def test_chromatic_number(g, chi):
    assert chromatic_number(g) == chi


def test_chromatic_number_of_join():
    g = join(cycle(4), 2)
    # frozen from the brute-force scan over 4-colorings
    assert oracles.chromatic_number(g.n, g.edges) == 4
    assert chromatic_number(g) == 4


def test_chromatic_number_node_cap():
    # bracket is [2, 3], so a zero budget must raise rather than guess
    with pytest.raises(ResourceLimitError):
        chromatic_number(cycle(7), node_cap=0)


@pytest.mark.parametrize(
    "g, d",
    [
        (make_graph(5, [(0, 1), (0, 2), (2, 3), (2, 4)]), 1),
        (cycle(6), 2),
        (complete(5), 4),
    ],
)
def test_degeneracy(g, d):
    assert degeneracy(g).d == d


@pytest.mark.parametrize("g, delta", [(complete_bipartite(3, 3), 3), (path(3), 1), (complete(4), 3)])
def test_min_degree(g, delta):
    assert min_degree(g) == delta


def test_min_degree_empty():
    with pytest.raises(ValueError):
        min_degree(empty(0))


@given(graphs(max_n=7), st.integers(0, 3))
def test_join_arithmetic(g, s):
    j = join(g, s)
    assert j.n == g.n + s
    assert j.m == g.m + s * g.n + s * (s - 1) // 2
    assert set(g.edges) <= set(j.edges)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6), st.integers(0, 2))
def test_chromatic_number_of_join_adds_s(g, s):
    assert chromatic_number(join(g, s)) == chromatic_number(g) + s


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=6))
def test_chromatic_number_matches_brute_force(g):
    assert chromatic_number(g) == oracles.chromatic_number(g.n, g.edges)


@given(graphs(max_n=8))
def test_chromatic_number_at_most_degeneracy_plus_one(g):
    assert chromatic_number(g) <= degeneracy(g).d + 1


@given(graphs(max_n=8))
def test_degeneracy_witness(g):
    order = degeneracy(g)
    assert sorted(order.ordering) == list(range(g.n))
    done = set()
    worst = 0
    for v in order.ordering:
        back = len(g.neighbors(v) & done)
        assert back <= order.d
        worst = max(worst, back)
        done.add(v)
    # exactness: the witness attains d
    assert worst == order.d or g.n == 0


def test_remove_vertices_relabels():
    sub, kept = cycle(5).remove_vertices([2])
    assert kept == (0, 1, 3, 4)
    assert sub.edges == ((0, 1), (0, 3), (2, 3))
