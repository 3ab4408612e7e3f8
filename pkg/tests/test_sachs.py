import random

import pytest
from hypothesis import given, settings

from sdke.corpus import barbell, complete, cycle, random_graph
from sdke.decomposition import is_konig_egervary, sdke
from sdke.errors import BudgetExceeded
from sdke.sachs import (
    enumerate_sachs,
    has_odd_cycle_factor,
    has_triangle_factor,
    k_sachs_critical,
    k_sachs_critical_by_definition,
    odd_sachs_cover,
)

from . import oracles
from .test_graph import graphs


def test_enumerate_examples():
    assert [s.edges for s in enumerate_sachs(complete(2))] == [((0, 1),)]
    (only,) = list(enumerate_sachs(cycle(3)))
    assert only.edges == ((0, 1), (0, 2), (1, 2)) and only.odd_cycles()
    subs = list(enumerate_sachs(cycle(4)))
    assert len(subs) == 3
    assert sum(1 for s in subs if all(c.kind == "K2" for c in s.components)) == 2


def test_json_schema():
    (s,) = list(enumerate_sachs(cycle(3)))
    assert s.to_json() == {
        "edges": [[0, 1], [0, 2], [1, 2]],
        "components": [{"kind": "cycle", "vertices": [0, 1, 2]}],
    }


def test_odd_cycle_factor_examples():
    found, S = has_odd_cycle_factor(cycle(5))
    assert found and len(S.components) == 1 and len(S.components[0].vertices) == 5
    assert has_odd_cycle_factor(complete(4)) == (False, None)
    found, S = has_odd_cycle_factor(barbell())
    assert found and sorted(len(c.vertices) for c in S.components) == [3, 3]


def test_triangle_factor():
    found, tris = has_triangle_factor(barbell())
    assert found and sorted(map(sorted, tris)) == [[0, 1, 2], [3, 4, 5]]
    assert has_triangle_factor(cycle(6)) == (False, None)
    assert has_triangle_factor(complete(4)) == (False, None)


def test_k_sachs_examples():
    res = k_sachs_critical(complete(2), 1)
    assert not res and res.witness == {0}
    assert k_sachs_critical(complete(4), 1)
    res = k_sachs_critical(cycle(4), 1)
    assert not res and res.witness == {0, 2}


def test_odd_cover_examples():
    assert odd_sachs_cover(cycle(3)) == {0, 1, 2}
    assert odd_sachs_cover(cycle(4)) == frozenset()
    assert odd_sachs_cover(barbell()) == frozenset(range(6))


def test_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_sachs(complete(8), budget=5))
    with pytest.raises(BudgetExceeded):
        k_sachs_critical(complete(8), 1, budget=5)


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_enumeration_against_edge_subset_scan(G):
    ours = [frozenset(s.edges) for s in enumerate_sachs(G)]
    assert len(ours) == len(set(ours))
    assert set(ours) == set(oracles.sachs_subgraphs(G))


@settings(max_examples=50, deadline=None)
@given(graphs(max_n=6))
def test_odd_cover_against_scan(G):
    assert odd_sachs_cover(G) == oracles.sachs_odd_cycle_vertices(G)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_k_sachs_characterization(G):
    for k in (1, 2):
        if k <= G.n:
            assert bool(k_sachs_critical(G, k)) == k_sachs_critical_by_definition(G, k)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_ke_graphs_have_no_odd_sachs_cycle(G):
    if is_konig_egervary(G):
        assert not odd_sachs_cover(G)


def test_odd_cycle_factor_implies_sd_up_to_nine():
    rng = random.Random(5)
    checked = 0
    for _ in range(400):
        n = rng.randint(3, 9)
        G = random_graph(rng, n, rng.uniform(0.3, 0.9))
        found, _ = has_odd_cycle_factor(G)
        if found:
            checked += 1
            assert not sdke(G).ke
    assert checked > 50
