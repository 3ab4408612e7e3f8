"""Named graphs and small-graph corpora for cross-checking routes."""

from __future__ import annotations

import random
from collections.abc import Iterator
from functools import lru_cache

import networkx as nx

from .graph import Graph, is_connected, min_degree
from .matching import Matching, has_unique_perfect_matching

ATLAS_MAX_N = 7
EXHAUSTIVE_MAX_N = 8


def complete(n: int) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def cycle(n: int) -> Graph:
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def empty(n: int) -> Graph:
    return Graph(n)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def barbell() -> Graph:
    """Triangles 0-1-2 and 3-4-5 joined by the edge 2-3."""
    return Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])


def triangle_with_path() -> Graph:
    """Triangle 0-1-2 with the path 2-3-4 hanging off vertex 2."""
    return Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])


def triangle_with_pendant() -> Graph:
    """Triangle 0-1-2 with a pendant vertex 3 on vertex 0."""
    return Graph(4, [(0, 1), (0, 2), (1, 2), (0, 3)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges, offset = [], 0
    for g in graphs:
        edges += [(u + offset, v + offset) for u, v in g.edges()]
        offset += g.n
    return Graph(offset, edges)


NAMED = {
    "petersen": petersen,
    "barbell": barbell,
    "triangle-path": triangle_with_path,
    "triangle-pendant": triangle_with_pendant,
}


# ---------------------------------------------------------------- exhaustive

@lru_cache(maxsize=None)
def _atlas() -> tuple[Graph, ...]:
    return tuple(Graph.from_networkx(g) for g in nx.graph_atlas_g())


@lru_cache(maxsize=None)
def _order8() -> tuple[Graph, ...]:
    import pynauty

    seen: set[bytes] = set()
    out = []
    for g in _atlas():
        if g.n != 7:
            continue
        for nbrs in range(1 << 7):
            edges = list(g.edges()) + [(u, 7) for u in range(7) if nbrs >> u & 1]
            h = Graph(8, edges)
            adj = {v: list(h.adj[v]) for v in range(8)}
            cert = pynauty.certificate(pynauty.Graph(8, adjacency_dict=adj))
            if cert not in seen:
                seen.add(cert)
                out.append(h)
    return tuple(out)


def all_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """Every graph on exactly ``n`` vertices up to isomorphism (``n <= 8``)."""
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration supports n <= {EXHAUSTIVE_MAX_N}")
    pool = _order8() if n == 8 else (g for g in _atlas() if g.n == n)
    for g in pool:
        if not connected or is_connected(g):
            yield g


def graphs_up_to(max_n: int, connected: bool = False, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from all_graphs(n, connected)


# -------------------------------------------------------------------- random

def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, ((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


def random_unique_pm_graph(rng: random.Random, n: int, density: float = 0.5) -> Graph:
    """Random graph with exactly one perfect matching.

    Starts from a random perfect matching and offers the remaining pairs in
    random order, keeping an edge only if the matching stays unique. Any
    unique-PM graph can be produced this way, because deleting non-matching
    edges preserves uniqueness.
    """
    if n % 2:
        raise ValueError("a perfect matching needs an even number of vertices")
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted(perm[i:i + 2])) for i in range(0, n, 2)}
    M = Matching(n, edges)
    others = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in edges]
    rng.shuffle(others)
    for e in others:
        if rng.random() >= density:
            continue
        trial = Graph(n, edges | {e})
        unique, _ = has_unique_perfect_matching(trial)
        if unique:
            edges.add(e)
    G = Graph(n, edges)
    assert M.is_matching_of(G)
    return G


def random_min_degree_graph(rng: random.Random, n: int, delta: int) -> Graph:
    """Random graph with minimum degree at least ``delta``.

    Starts from K_n and deletes edges in random order whenever both ends
    stay above the threshold; the number of attempted deletions is itself
    random so that denser graphs also appear.
    """
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(edges)
    deg = [n - 1] * n
    keep = set(edges)
    attempts = rng.randint(0, len(edges))
    for u, v in edges[:attempts]:
        if deg[u] > delta and deg[v] > delta:
            keep.discard((u, v))
            deg[u] -= 1
            deg[v] -= 1
    G = Graph(n, keep)
    assert min_degree(G) >= delta
    return G
