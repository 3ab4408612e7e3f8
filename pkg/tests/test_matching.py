import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sdke.corpus import barbell, complete, cycle, empty, path, petersen, random_unique_pm_graph
from sdke.errors import BudgetExceeded
from sdke.graph import Graph, is_connected
from sdke.matching import (
    Kind,
    Matching,
    alternating_reach,
    alternating_search,
    count_maximum_matchings,
    enumerate_maximum_matchings,
    has_unique_perfect_matching,
    is_alternating,
    is_factor_critical,
    is_near_perfect,
    is_perfect,
    matching_number,
    maximum_matching,
    walk_to,
)

from . import oracles
from .test_graph import graphs

M_, N_ = Kind.MATCHED, Kind.UNMATCHED


def test_maximum_matching_examples():
    M = maximum_matching(complete(2))
    assert M.edges == ((0, 1),)
    assert len(maximum_matching(cycle(5))) == 2
    M = maximum_matching(petersen())
    assert len(M) == 5 and is_perfect(M, petersen())
    assert oracles.mu(petersen()) == 5


def test_enumerate_examples():
    assert count_maximum_matchings(cycle(4)) == 2
    assert count_maximum_matchings(complete(4)) == 3
    assert count_maximum_matchings(cycle(5)) == 5


def test_perfect_and_near_perfect():
    k2, c3, c4 = complete(2), cycle(3), cycle(4)
    assert is_perfect(Matching(2, [(0, 1)]), k2)
    M = Matching(3, [(0, 1)])
    assert is_near_perfect(M, c3) and not is_perfect(M, c3)
    M = Matching(4, [(0, 1)])
    assert not is_perfect(M, c4) and not is_near_perfect(M, c4)


def test_unique_perfect_matching_examples():
    assert has_unique_perfect_matching(complete(2)) == (True, Matching(2, [(0, 1)]))
    unique, M = has_unique_perfect_matching(cycle(4))
    assert not unique and M is not None and is_perfect(M, cycle(4))
    unique, M = has_unique_perfect_matching(barbell())
    assert unique and set(M.edges) == {(0, 1), (2, 3), (4, 5)}
    assert has_unique_perfect_matching(cycle(3)) == (False, None)


def test_alternating_reach_examples():
    assert alternating_reach(complete(2), Matching(2, [(0, 1)]), 0, M_) == {(1, M_)}
    reach = alternating_reach(cycle(3), Matching(3, [(0, 1)]), 2, N_)
    assert reach == {(0, N_), (1, N_), (1, M_), (0, M_), (2, N_)}
    for kind in Kind:
        assert alternating_reach(empty(1), Matching(1), 0, kind) == frozenset()


def test_factor_critical_examples():
    assert is_factor_critical(cycle(3))
    assert is_factor_critical(cycle(5))
    assert not is_factor_critical(complete(2))
    assert not is_factor_critical(path(3))


def test_matching_rejects_overlap():
    with pytest.raises(ValueError):
        Matching(3, [(0, 1), (1, 2)])


def test_enumeration_budget():
    with pytest.raises(BudgetExceeded):
        list(enumerate_maximum_matchings(complete(8), budget=10))


def _edge_sets(ms):
    return {frozenset(M.edges) for M in ms}


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8))
def test_maximum_matching_against_brute_force(G):
    M = maximum_matching(G)
    assert M.is_matching_of(G)
    assert len(M) == oracles.mu(G) == matching_number(G)
    assert len(M) == len(nx.max_weight_matching(G.to_networkx(), maxcardinality=True))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_enumeration_against_brute_force(G):
    ours = list(enumerate_maximum_matchings(G))
    assert len(ours) == len(_edge_sets(ours))
    assert _edge_sets(ours) == set(oracles.maximum_matchings(G))


@given(graphs(max_n=9))
def test_matching_is_involution(G):
    M = maximum_matching(G)
    for v in G.vertices:
        assert M(M(v)) == v
        assert M.is_saturated(v) == (M(v) != v)


@settings(deadline=None)
@given(graphs(max_n=8), st.data())
def test_reach_nonempty_iff(G, data):
    if not G.n:
        return
    M = maximum_matching(G)
    v = data.draw(st.integers(0, G.n - 1))
    assert bool(alternating_reach(G, M, v, M_)) == M.is_saturated(v)
    has_other = any(u != M(v) for u in G.adj[v])
    assert bool(alternating_reach(G, M, v, N_)) == has_other


@settings(deadline=None)
@given(graphs(max_n=8), st.data())
def test_reconstructed_walks_alternate(G, data):
    if not G.n:
        return
    M = maximum_matching(G)
    v = data.draw(st.integers(0, G.n - 1))
    first = data.draw(st.sampled_from(list(Kind)))
    pred = alternating_search(G, M, v, first)
    for state in pred:
        walk = walk_to(pred, v, state)
        assert walk[0] == v and walk[-1] == state[0]
        assert is_alternating(M, walk, G)
        assert M.contains(walk[0], walk[1]) == (first is M_)
        assert M.contains(walk[-2], walk[-1]) == (state[1] is M_)


@settings(deadline=None)
@given(graphs(max_n=8))
def test_factor_critical_implies_odd_connected(G):
    if is_factor_critical(G):
        assert G.n % 2 == 1 and is_connected(G)


@settings(deadline=None)
@given(graphs(max_n=8))
def test_unique_pm_against_count(G):
    unique, M = has_unique_perfect_matching(G)
    pms = [m for m in oracles.all_matchings(G) if 2 * len(m) == G.n]
    assert unique == (len(pms) == 1)
    assert (M is not None) == bool(pms)
    if M is not None:
        assert frozenset(M.edges) in pms


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_symmetric_difference_of_perfect_matchings(G):
    pms = [M for M in enumerate_maximum_matchings(G) if is_perfect(M, G)]
    for A in pms[:4]:
        for B in pms[:4]:
            h = nx.Graph(list(set(A.edges) ^ set(B.edges)))
            for comp in nx.connected_components(h):
                sub = h.subgraph(comp)
                assert all(d == 2 for _, d in sub.degree())
                assert len(comp) % 2 == 0


def test_random_unique_pm_generator():
    rng = random.Random(3)
    for _ in range(30):
        G = random_unique_pm_graph(rng, 8, 0.7)
        pms = [m for m in oracles.maximum_matchings(G) if 2 * len(m) == G.n]
        assert len(pms) == 1


def test_from_mate_and_json():
    M = Matching.from_mate([1, 0, -1, 4, 3])
    assert M.edges == ((0, 1), (3, 4))
    assert M.unsaturated() == [2]
    assert M.to_json() == [[0, 1], [3, 4]]
    assert Matching(5, [tuple(e) for e in M.to_json()]) == M
    assert not M.is_matching_of(Graph(5, [(0, 1)]))
