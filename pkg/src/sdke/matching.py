"""Matchings: maximum cardinality (Edmonds), exhaustive enumeration, alternating walks."""

from __future__ import annotations

import enum
from collections import deque
from collections.abc import Iterable, Iterator

from .errors import BudgetExceeded
from .graph import DEFAULT_ENUM_BUDGET, Edge, Graph, delete_vertex, norm_edge


class Matching:
    """A matching stored both as an edge set and as the involution ``v -> M(v)``."""

    __slots__ = ("n", "edges", "mate")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        mate = list(range(n))
        norm = []
        for u, v in edges:
            if u == v or mate[u] != u or mate[v] != v:
                raise ValueError(f"edge ({u}, {v}) conflicts with the matching")
            mate[u], mate[v] = v, u
            norm.append(norm_edge(u, v))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(sorted(norm))
        self.mate: tuple[int, ...] = tuple(mate)

    @classmethod
    def from_mate(cls, mate: list[int]) -> Matching:
        return cls(len(mate), ((u, v) for u, v in enumerate(mate) if u < v))

    def __call__(self, v: int) -> int:
        return self.mate[v]

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matching):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Matching({list(self.edges)})"

    def is_saturated(self, v: int) -> bool:
        return self.mate[v] != v

    def contains(self, u: int, v: int) -> bool:
        return self.mate[u] == v and u != v

    @property
    def saturated_mask(self) -> int:
        mask = 0
        for u, v in self.edges:
            mask |= 1 << u | 1 << v
        return mask

    def unsaturated(self) -> list[int]:
        return [v for v in range(self.n) if self.mate[v] == v]

    def is_matching_of(self, G: Graph) -> bool:
        return self.n == G.n and all(G.has_edge(u, v) for u, v in self.edges)

    def to_json(self) -> list[list[int]]:
        return [list(e) for e in self.edges]


def is_perfect(M: Matching, G: Graph) -> bool:
    return all(M.mate[v] != v for v in G.vertices)


def is_near_perfect(M: Matching, G: Graph) -> bool:
    return sum(1 for v in G.vertices if M.mate[v] == v) == 1


# --------------------------------------------------------- Edmonds' algorithm

def _augment(G: Graph, match: list[int], root: int) -> bool:
    """Grow an alternating tree from the exposed ``root``; flip the first augmenting path found."""
    n = G.n
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in G.adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                cur = lca(v, to)
                in_blossom = [False] * n
                mark_path(v, cur, to, in_blossom)
                mark_path(to, cur, v, in_blossom)
                for i in range(n):
                    if in_blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    w = to
                    while w != -1:
                        pv = parent[w]
                        nxt = match[pv]
                        match[w], match[pv] = pv, w
                        w = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def maximum_matching(G: Graph) -> Matching:
    """Maximum cardinality matching by blossom shrinking.

    Greedy initialisation and lowest-index-first scanning make the result a
    deterministic function of the graph.
    """
    match = [-1] * G.n
    for u, v in G.edges():
        if match[u] == -1 and match[v] == -1:
            match[u], match[v] = v, u
    for root in G.vertices:
        if match[root] == -1:
            _augment(G, match, root)
    return Matching(G.n, ((u, v) for u, v in enumerate(match) if v > u))


def matching_number(G: Graph) -> int:
    return len(maximum_matching(G))


def enumerate_maximum_matchings(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> Iterator[Matching]:
    """Yield every maximum matching of ``G`` exactly once (lexicographic order)."""
    n = G.n
    slack = n - 2 * matching_number(G)
    mate = list(range(n))
    count = 0

    def rec(v: int, slack_left: int) -> Iterator[Matching]:
        nonlocal count
        while v < n and mate[v] != v:
            v += 1
        if v == n:
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded("maximum matching enumeration", budget)
            yield Matching.from_mate(mate)
            return
        for u in G.adj[v]:
            if u > v and mate[u] == u:
                mate[v], mate[u] = u, v
                yield from rec(v + 1, slack_left)
                mate[v], mate[u] = v, u
        if slack_left:
            # v stays exposed; mark it so later scans skip it
            mate[v] = -1
            yield from rec(v + 1, slack_left - 1)
            mate[v] = v

    for M in rec(0, slack):
        yield M


def count_maximum_matchings(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> int:
    return sum(1 for _ in enumerate_maximum_matchings(G, budget))


# --------------------------------------------------------- alternating walks

class Kind(enum.Enum):
    MATCHED = "m"
    UNMATCHED = "n"

    def flip(self) -> Kind:
        return Kind.UNMATCHED if self is Kind.MATCHED else Kind.MATCHED


State = tuple[int, Kind]


def _step(G: Graph, M: Matching, v: int, kind: Kind) -> Iterator[int]:
    """Neighbours of ``v`` along an edge of the given kind."""
    if kind is Kind.MATCHED:
        if M.mate[v] != v:
            yield M.mate[v]
    else:
        partner = M.mate[v]
        for u in G.adj[v]:
            if u != partner:
                yield u


def alternating_search(G: Graph, M: Matching, start: int, first: Kind) -> dict[State, State | None]:
    """BFS over the (vertex, kind of last edge) automaton.

    Returns a predecessor map over every reachable state; states whose
    predecessor is ``None`` were reached by the first edge out of ``start``.
    The start itself is only present if some walk returns to it.
    """
    pred: dict[State, State | None] = {}
    queue: deque[State] = deque()
    for u in _step(G, M, start, first):
        s = (u, first)
        if s not in pred:
            pred[s] = None
            queue.append(s)
    while queue:
        v, kind = queue.popleft()
        nk = kind.flip()
        for u in _step(G, M, v, nk):
            s = (u, nk)
            if s not in pred:
                pred[s] = (v, kind)
                queue.append(s)
    return pred


def alternating_reach(G: Graph, M: Matching, start: int, first: Kind) -> frozenset[State]:
    """All states reachable by alternating walks out of ``start`` whose first edge has kind ``first``."""
    return frozenset(alternating_search(G, M, start, first))


def walk_to(pred: dict[State, State | None], start: int, target: State) -> list[int]:
    """Vertex sequence of the BFS walk from ``start`` to ``target``."""
    seq = []
    s: State | None = target
    while s is not None:
        seq.append(s[0])
        s = pred[s]
    seq.append(start)
    seq.reverse()
    return seq


def reach_masks(G: Graph, M: Matching, start: int, first: Kind) -> tuple[int, int]:
    """Bitmasks of vertices reached with last edge matched / unmatched."""
    by_m = by_n = 0
    for v, kind in alternating_search(G, M, start, first):
        if kind is Kind.MATCHED:
            by_m |= 1 << v
        else:
            by_n |= 1 << v
    return by_m, by_n


def is_alternating(M: Matching, walk: list[int], G: Graph | None = None) -> bool:
    """True if consecutive edges of ``walk`` exist (when ``G`` given) and alternate in/out of ``M``."""
    prev = None
    for a, b in zip(walk, walk[1:]):
        if a == b or (G is not None and not G.has_edge(a, b)):
            return False
        cur = M.contains(a, b)
        if prev is not None and cur == prev:
            return False
        prev = cur
    return True


# ---------------------------------------------------- uniqueness, criticality

def has_unique_perfect_matching(G: Graph) -> tuple[bool, Matching | None]:
    """Decide whether ``G`` has exactly one perfect matching.

    The second item is a perfect matching whenever one exists. Uniqueness
    holds iff no ``M``-alternating cycle exists, which is the same as no
    matched edge ``e`` leaving ``G - e`` with a perfect matching.
    """
    M = maximum_matching(G)
    if 2 * len(M) != G.n:
        return False, None
    for u, v in M.edges:
        H = Graph(G.n, (e for e in G.edges() if e != (u, v)))
        if 2 * matching_number(H) == G.n:
            return False, M
    return True, M


def alternating_cycle(G: Graph, M: Matching) -> list[int] | None:
    """An ``M``-alternating cycle for a perfect matching ``M``, or ``None``.

    Found as a component of ``M`` symmetric-difference another perfect
    matching; returned closed (first vertex repeated at the end).
    """
    for u, v in M.edges:
        H = Graph(G.n, (e for e in G.edges() if e != (u, v)))
        other = maximum_matching(H)
        if 2 * len(other) != G.n:
            continue
        cycle = [u]
        cur, use_m = u, False
        while True:
            nxt = M.mate[cur] if use_m else other.mate[cur]
            cycle.append(nxt)
            cur, use_m = nxt, not use_m
            if cur == u:
                return cycle
    return None


def is_factor_critical(G: Graph) -> bool:
    if G.n % 2 == 0:
        return False
    half = (G.n - 1) // 2
    return all(matching_number(delete_vertex(G, v)[0]) == half for v in G.vertices)
