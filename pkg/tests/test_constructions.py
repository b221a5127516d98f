import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from dpcolor.constructions import hard_instance, perfect_matchings, verify_hard_instance
from dpcolor.cover import remove_and_restrict, validate_cover
from dpcolor.errors import PreconditionError
from dpcolor.graph import chromatic_number
from dpcolor.solver import find_transversal


def expected_cross_edges(n):
    """Cross edges rebuilt straight from the three rules, names as strings."""
    k = n // 2 - 1
    xs = ["x"] + [f"x{s}" for s in range(k)]
    ys = ["y"] + [f"y{t}" for t in range(k)]
    a = [f"a{r}" for r in range(k * k - 2)]
    edges = set()

    def add(p, q):
        edges.add(frozenset((p, q)))

    every = xs + ys + a
    for u in ["x", "y"] + a:
        for v in every:
            if v == u:
                continue
            # X-Y pairs are adjacent, A dominates everything
            if u in a or v in a or (u in xs) != (v in xs):
                for i in range(k):
                    for j in range(k):
                        add((u, i, j), (v, i, j))
    for s in range(k):
        for t in range(k):
            for i in range(k):
                for j in range(k):
                    add((f"x{s}", i, j), (f"y{t}", (i + s) % k, (j + t) % k))
    return edges


def test_n6_counts():
    inst = hard_instance(6)
    assert (inst.k, inst.a_size) == (2, 2)
    assert (inst.base.n, inst.base.m) == (8, 22)
    assert sum(len(lst) for lst in inst.cover.lists) == 32
    assert chromatic_number(inst.base) == 4


def test_n8_counts():
    inst = hard_instance(8)
    assert (inst.k, inst.a_size, inst.base.n) == (3, 7, 15)
    assert set(inst.cover.list_sizes()) == {9}


@pytest.mark.parametrize("n", [5, 7, 4, 2, 0])
def test_rejects_bad_n(n):
    with pytest.raises(PreconditionError):
        hard_instance(n)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_edges_match_rules(n):
    inst = hard_instance(n)
    named = {
        frozenset(inst.labeling[x] for x in e) for e in inst.cover.h_edges
    }
    assert named == expected_cross_edges(n)


@pytest.mark.parametrize("n", [6, 8, 10])
def test_rules_partition_cross_edges(n):
    inst = hard_instance(n)
    identity, shifted = inst.rule_edges()
    assert not identity & shifted
    assert identity | shifted == set(inst.cover.h_edges)
    special = {inst.x, inst.y, *inst.a_vertices}
    for x, y in shifted:
        assert not {inst.cover.owner[x], inst.cover.owner[y]} & special
    for x, y in identity:
        assert {inst.cover.owner[x], inst.cover.owner[y]} & special


@pytest.mark.parametrize("n", range(6, 22, 2))
def test_structure_up_to_twenty(n):
    inst = hard_instance(n)
    assert validate_cover(inst.cover).ok
    assert perfect_matchings(inst.cover)
    assert set(inst.cover.list_sizes()) == {inst.k ** 2}


def test_n6_unsatisfiable():
    c = hard_instance(6).cover
    assert not find_transversal(c).satisfiable
    assert not oracles.has_transversal(c.lists, c.h_edges)


def test_verify_report():
    rep = verify_hard_instance(6, refute=True)
    assert rep.structural_ok and rep.refuted
    d = rep.to_dict()
    assert d["checks"]["chi_join"] == 4 and d["lower_bound_certified"] is True
    rep10 = verify_hard_instance(10)
    assert rep10.structural_ok and rep10.refuted is None
    assert rep10.to_dict()["lower_bound_certified"] is None


def test_labeling_is_bijective():
    inst = hard_instance(8)
    ids = [x for lst in inst.cover.lists for x in lst]
    assert sorted(inst.labeling) == sorted(ids)
    assert len(set(inst.labeling.values())) == len(ids)
    for x, (name, i, j) in inst.labeling.items():
        assert inst.cover_id(inst.cover.owner[x], i, j) == x


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=2, max_size=2))
def test_distinct_labels_on_a(labels):
    # choices on A are independent exactly when their (i, j) labels differ
    inst = hard_instance(6)
    picks = [inst.cover_id(a, i, j) for a, (i, j) in zip(inst.a_vertices, labels)]
    independent = all(q not in inst.cover.h_adj[p] for p, q in itertools.combinations(picks, 2))
    assert independent == (len(set(labels)) == len(labels))


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_partial_assignments_on_a_n8(data):
    inst = hard_instance(8)
    k = inst.k
    labels = data.draw(st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)),
                                min_size=inst.a_size, max_size=inst.a_size))
    picks = [inst.cover_id(a, i, j) for a, (i, j) in zip(inst.a_vertices, labels)]
    independent = all(q not in inst.cover.h_adj[p] for p, q in itertools.combinations(picks, 2))
    assert independent == (len(set(labels)) == len(labels))


def test_restriction_after_a_choices():
    # fixing distinct labels on both A vertices leaves lists of size 2 on X and Y
    inst = hard_instance(6)
    a0, a1 = inst.a_vertices
    chosen = [inst.cover_id(a0, 0, 0), inst.cover_id(a1, 1, 1)]
    r = remove_and_restrict(inst.cover, chosen)
    assert len(r.kept) == 6
    assert all(len(lst) == 2 for lst in r.cover.lists)
    assert not find_transversal(r.cover).satisfiable
