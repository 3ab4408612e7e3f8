"""Immutable simple graphs on dense vertex ids, plus the set primitives used everywhere else.

Vertex sets are plain ``frozenset[int]``; hot loops work on int bitmasks
(bit ``v`` set iff vertex ``v`` is a member).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator

import networkx as nx

from .errors import BudgetExceeded, GraphParseError

VertexSet = frozenset
Edge = tuple[int, int]

DEFAULT_ENUM_BUDGET = 1_000_000
ALPHA_MAX_N = 64
MAX_PARSE_N = 100_000  # refuse absurd vertex counts instead of allocating them


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def from_mask(mask: int) -> frozenset[int]:
    return frozenset(bits(mask))


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Instances never change after construction; every "modifying" helper
    returns a new graph.
    """

    __slots__ = ("n", "m", "adj", "masks", "_edges")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise GraphParseError(f"negative vertex count {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        seen: set[Edge] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphParseError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphParseError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            e = norm_edge(u, v)
            if e in seen:
                raise GraphParseError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.m = len(seen)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.masks: tuple[int, ...] = tuple(to_mask(s) for s in nbrs)
        self._edges: tuple[Edge, ...] = tuple(sorted(seen))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self._edges)})"

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self._edges)
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> Graph:
        order = sorted(g.nodes())
        index = {v: i for i, v in enumerate(order)}
        return cls(len(order), ((index[u], index[v]) for u, v in g.edges()))

    def to_graph6(self) -> str:
        return nx.to_graph6_bytes(self.to_networkx(), header=False).decode("ascii").strip()

    def to_edge_list(self) -> str:
        lines = [str(self.n)] + [f"{u} {v}" for u, v in self._edges]
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- parsing

def parse_edge_list(text: str) -> Graph:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(p) for p in parts]
        except ValueError:
            raise GraphParseError(f"line {lineno}: expected integers, got {raw.strip()!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise GraphParseError(f"line {lineno}: first line must be the vertex count")
            n = nums[0]
            if n > MAX_PARSE_N:
                raise GraphParseError(f"vertex count {n} exceeds the limit of {MAX_PARSE_N}")
            continue
        if len(nums) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {raw.strip()!r}")
        edges.append((nums[0], nums[1]))
    if n is None:
        raise GraphParseError("empty input: missing vertex count")
    return Graph(n, edges)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):].strip()
    if not s or "\n" in s:
        raise GraphParseError("graph6 input must be a single non-empty line")
    try:
        g = nx.from_graph6_bytes(s.encode("ascii"))
        if g.number_of_nodes() > MAX_PARSE_N:
            raise GraphParseError(f"vertex count {g.number_of_nodes()} exceeds the limit of {MAX_PARSE_N}")
    except (ValueError, IndexError, nx.NetworkXError, UnicodeEncodeError) as exc:
        raise GraphParseError(f"malformed graph6 string: {exc}") from None
    return Graph.from_networkx(g)


def parse_graph(text: str, fmt: str | None = None) -> Graph:
    """Parse an edge list (``fmt="el"``) or a graph6 string (``fmt="g6"``).

    With ``fmt=None`` the format is sniffed: a first data line consisting of
    a single integer means edge list, anything else is read as graph6.
    """
    if fmt == "el":
        return parse_edge_list(text)
    if fmt == "g6":
        return parse_graph6(text)
    if fmt is not None:
        raise ValueError(f"unknown graph format {fmt!r}")
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            if line.isdigit():
                return parse_edge_list(text)
            return parse_graph6(text)
    raise GraphParseError("empty input")


# ------------------------------------------------------------- set primitives

def neighborhood(G: Graph, S: Iterable[int]) -> frozenset[int]:
    """Union of the neighbourhoods of ``S``; may intersect ``S`` itself."""
    mask = 0
    for v in S:
        mask |= G.masks[v]
    return from_mask(mask)


def neighborhood_mask(G: Graph, mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= G.masks[v]
    return out


def boundary(G: Graph, S: Iterable[int]) -> frozenset[Edge]:
    inside = to_mask(S)
    return frozenset(
        (u, v) for u, v in G.edges() if (inside >> u & 1) != (inside >> v & 1)
    )


def isolated_count(G: Graph) -> int:
    return sum(1 for v in G.vertices if not G.adj[v])


def min_degree(G: Graph) -> int:
    return min((len(a) for a in G.adj), default=0)


def components_mask(G: Graph, within: int | None = None) -> list[int]:
    """Connected components of ``G[within]`` as bitmasks, ordered by least vertex."""
    remaining = G.full_mask if within is None else within
    comps = []
    while remaining:
        low = remaining & -remaining
        comp = frontier = low
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= G.masks[v]
            nxt &= remaining & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        remaining &= ~comp
    return comps


def connected_components(G: Graph) -> list[frozenset[int]]:
    return [from_mask(c) for c in components_mask(G)]


def is_connected(G: Graph) -> bool:
    return len(components_mask(G)) <= 1


def odd_components(G: Graph, removed: Iterable[int] = ()) -> int:
    """Number of odd-order components of ``G - removed``."""
    within = G.full_mask & ~to_mask(removed)
    return sum(1 for c in components_mask(G, within) if c.bit_count() % 2)


def induced_subgraph(G: Graph, X: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """``G[X]`` relabelled densely; ``relabel[i]`` is the original id of vertex ``i``."""
    keep = tuple(sorted(set(X)))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    return Graph(len(keep), edges), keep


def delete_vertices(G: Graph, X: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    gone = set(X)
    return induced_subgraph(G, (v for v in G.vertices if v not in gone))


def delete_vertex(G: Graph, v: int) -> tuple[Graph, tuple[int, ...]]:
    return delete_vertices(G, (v,))


def delete_edge(G: Graph, u: int, v: int) -> Graph:
    e = norm_edge(u, v)
    if e not in set(G.edges()):
        raise KeyError(f"no edge {e}")
    return Graph(G.n, (f for f in G.edges() if f != e))


# ------------------------------------------------------- independent sets

def is_independent(G: Graph, S: Iterable[int]) -> bool:
    mask = to_mask(S)
    return all(not (G.masks[v] & mask) for v in bits(mask))


def iter_independent_masks(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> Iterator[int]:
    """Every independent set (``0`` included) as a bitmask, in lexicographic order."""
    count = 0
    stack = [(0, G.full_mask)]
    while stack:
        cur, allowed = stack.pop()
        count += 1
        if budget is not None and count > budget:
            raise BudgetExceeded("independent set enumeration", budget)
        yield cur
        children = []
        for v in bits(allowed):
            # only extend with vertices above v so each set appears once
            children.append((cur | 1 << v, allowed & ~G.masks[v] & ~((2 << v) - 1)))
        stack.extend(reversed(children))


def enumerate_independent_sets(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> Iterator[frozenset[int]]:
    for mask in iter_independent_masks(G, budget):
        yield from_mask(mask)


def _mis_size(G: Graph, cand: int, size: int, best: int) -> int:
    if not cand:
        return max(best, size)
    if size + cand.bit_count() <= best:
        return best
    # vertices of degree <= 1 inside cand can always be taken
    for v in bits(cand):
        nb = G.masks[v] & cand
        if nb.bit_count() <= 1:
            return _mis_size(G, cand & ~nb & ~(1 << v), size + 1, best)
    pivot = max(bits(cand), key=lambda v: (G.masks[v] & cand).bit_count())
    best = _mis_size(G, cand & ~G.masks[pivot] & ~(1 << pivot), size + 1, best)
    return _mis_size(G, cand & ~(1 << pivot), size, best)


def independence_number(G: Graph, max_n: int = ALPHA_MAX_N) -> int:
    """alpha(G) by branch and bound; refuses graphs with more than ``max_n`` vertices."""
    if G.n > max_n:
        raise BudgetExceeded("independence number (vertex cap)", max_n)
    return _mis_size(G, G.full_mask, 0, 0)


def maximum_independent_sets(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> list[frozenset[int]]:
    """Omega(G): all independent sets of size alpha(G), lexicographically ordered."""
    alpha = independence_number(G)
    return sorted(
        (from_mask(s) for s in iter_independent_masks(G, budget) if s.bit_count() == alpha),
        key=sorted,
    )
