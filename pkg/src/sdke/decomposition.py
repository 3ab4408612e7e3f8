"""SD-KE partition routes: leaf peeling, critical independent sets, Gallai-Edmonds reduction."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceeded, PreconditionError
from .graph import (
    DEFAULT_ENUM_BUDGET,
    Graph,
    bits,
    components_mask,
    delete_vertex,
    from_mask,
    independence_number,
    iter_independent_masks,
    neighborhood_mask,
    odd_components,
    to_mask,
)
from .matching import (
    Matching,
    has_unique_perfect_matching,
    matching_number,
)
from .structures import sd_oracle

ROUTES = ("algorithm1", "larson", "reduction+oracle", "oracle")
SUBSET_BUDGET = 1 << 22


@dataclass(frozen=True)
class DComponent:
    vertices: frozenset[int]

    @property
    def nontrivial(self) -> bool:
        return len(self.vertices) > 1


@dataclass(frozen=True)
class GallaiEdmondsDecomposition:
    D: frozenset[int]
    A: frozenset[int]
    C: frozenset[int]
    components: tuple[DComponent, ...]

    @property
    def nontrivial(self) -> tuple[DComponent, ...]:
        return tuple(c for c in self.components if c.nontrivial)

    def to_json(self) -> dict:
        return {
            "D": sorted(self.D),
            "A": sorted(self.A),
            "C": sorted(self.C),
            "components": [
                {"vertices": sorted(c.vertices), "nontrivial": c.nontrivial} for c in self.components
            ],
        }


@dataclass(frozen=True)
class SdKePartition:
    sd: frozenset[int]
    ke: frozenset[int]
    route: str

    def to_json(self) -> dict:
        return {"sd": sorted(self.sd), "ke": sorted(self.ke), "route": self.route}


@dataclass(frozen=True)
class LarsonDecomposition:
    L: frozenset[int]
    J: frozenset[int]


@dataclass(frozen=True)
class Origin:
    """Where a vertex of R(G) came from: a kept vertex of G, or triangle ``index``."""

    kind: str
    index: int
    distinguished: bool = False

    def to_json(self) -> dict:
        if self.kind == "vertex":
            return {"kind": "vertex", "vertex": self.index}
        return {"kind": "triangle", "triangle": self.index, "distinguished": self.distinguished}


@dataclass(frozen=True)
class ReducedForm:
    graph: Graph
    origin: tuple[Origin, ...]
    ge: GallaiEdmondsDecomposition = field(repr=False)
    # triangle i occupies vertices triangles[i] = (t_i, u_i, w_i) of R(G)
    triangles: tuple[tuple[int, int, int], ...] = ()

    def kept(self) -> dict[int, int]:
        """Map from R(G) vertex to original vertex, for kept vertices only."""
        return {r: o.index for r, o in enumerate(self.origin) if o.kind == "vertex"}

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "originMap": [o.to_json() for o in self.origin],
        }


# ----------------------------------------------------------- Gallai-Edmonds

def gallai_edmonds(G: Graph) -> GallaiEdmondsDecomposition:
    """D = vertices missed by some maximum matching, i.e. mu(G - v) = mu(G)."""
    mu = matching_number(G)
    D = 0
    for v in G.vertices:
        if matching_number(delete_vertex(G, v)[0]) == mu:
            D |= 1 << v
    A = neighborhood_mask(G, D) & ~D
    C = G.full_mask & ~D & ~A
    comps = tuple(DComponent(from_mask(c)) for c in components_mask(G, D))
    return GallaiEdmondsDecomposition(from_mask(D), from_mask(A), from_mask(C), comps)


# -------------------------------------------------------------- Algorithm 1

def algorithm1_sdke(G: Graph) -> SdKePartition:
    """SD-KE partition of a graph with a unique perfect matching by leaf peeling.

    While a degree-one vertex exists, it and its only neighbour (its partner
    in the perfect matching) go to KE and are deleted.
    """
    unique, M = has_unique_perfect_matching(G)
    if M is None:
        raise PreconditionError("graph has no perfect matching")
    if not unique:
        raise PreconditionError("perfect matching is not unique")
    alive = G.full_mask
    ke = 0
    while True:
        leaf = next((v for v in bits(alive) if (G.masks[v] & alive).bit_count() == 1), None)
        if leaf is None:
            break
        partner = (G.masks[leaf] & alive).bit_length() - 1
        ke |= 1 << leaf | 1 << partner
        alive &= ~(1 << leaf | 1 << partner)
    return SdKePartition(from_mask(G.full_mask & ~ke), from_mask(ke), "algorithm1")


# ------------------------------------------------------------------ Larson

def max_critical_independent_set(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> frozenset[int]:
    """Independent set maximising |I| - |N(I)|, largest among those, lexicographically first."""
    best_key = None
    best = 0
    for I in iter_independent_masks(G, budget):
        key = (I.bit_count() - neighborhood_mask(G, I).bit_count(), I.bit_count())
        if best_key is None or key > best_key or (key == best_key and sorted(bits(I)) < sorted(bits(best))):
            best_key, best = key, I
    return from_mask(best)


def larson_decomposition(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> LarsonDecomposition:
    J = max_critical_independent_set(G, budget)
    return LarsonDecomposition(from_mask(to_mask(J) | neighborhood_mask(G, to_mask(J))), J)


def larson_sdke(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> SdKePartition:
    """For graphs with a perfect matching KE(G) is Larson's set J u N(J)."""
    if 2 * matching_number(G) != G.n:
        raise PreconditionError("graph has no perfect matching")
    L = larson_decomposition(G, budget).L
    return SdKePartition(frozenset(G.vertices) - L, L, "larson")


# ------------------------------------------------------------- Hall-Tutte

@dataclass(frozen=True)
class HallTutteResult:
    holds: bool
    witness: frozenset[int] | None = None
    # 1: an independent S with |N(S)| <= |S|; 2: an S with odd(G - S) > |S|
    condition: int | None = None

    def __bool__(self) -> bool:
        return self.holds


def hall_tutte_sd_with_pm(G: Graph, budget: int | None = SUBSET_BUDGET) -> HallTutteResult:
    """Strict Hall excess on independent sets plus Tutte's condition.

    Holds exactly for SD graphs with a perfect matching. Condition 2 is
    decided by a matching computation; a violating set is only searched for
    when it fails.
    """
    for S in iter_independent_masks(G, budget):
        if S and neighborhood_mask(G, S).bit_count() <= S.bit_count():
            return HallTutteResult(False, from_mask(S), 1)
    if 2 * matching_number(G) == G.n:
        return HallTutteResult(True)
    seen = 0
    for k in range(G.n + 1):
        for S in itertools.combinations(G.vertices, k):
            seen += 1
            if budget is not None and seen > budget:
                raise BudgetExceeded("Tutte set search", budget)
            if odd_components(G, S) > k:
                return HallTutteResult(False, frozenset(S), 2)
    raise AssertionError("Tutte's theorem guarantees a violating set")


# ---------------------------------------------------------------- reduction

def reduce(G: Graph, ge: GallaiEdmondsDecomposition | None = None) -> ReducedForm:
    """Collapse each nontrivial component of G[D] to a triangle.

    Kept vertices are renumbered in increasing order, then triangle ``i``
    gets three new ids; the lowest is the distinguished vertex ``t_i``, which
    is joined to every vertex of A(G) adjacent to the collapsed component.
    """
    ge = ge or gallai_edmonds(G)
    removed = to_mask(v for c in ge.nontrivial for v in c.vertices)
    kept = [v for v in G.vertices if not removed >> v & 1]
    index = {v: i for i, v in enumerate(kept)}
    origin = [Origin("vertex", v) for v in kept]
    edges = [(index[u], index[v]) for u, v in G.edges() if u in index and v in index]
    A = to_mask(ge.A)
    triangles = []
    for i, comp in enumerate(ge.nontrivial):
        t = len(origin)
        tri = (t, t + 1, t + 2)
        triangles.append(tri)
        origin += [Origin("triangle", i, True), Origin("triangle", i), Origin("triangle", i)]
        edges += [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])]
        attach = neighborhood_mask(G, to_mask(comp.vertices)) & A
        edges += [(t, index[x]) for x in bits(attach)]
    return ReducedForm(Graph(len(origin), edges), tuple(origin), ge, tuple(triangles))


def reduce_matching(G: Graph, M: Matching, R: ReducedForm) -> Matching:
    """Carry a maximum matching of G over to R(G).

    Edges outside the collapsed components survive; an edge ``a d`` with ``d``
    collapsed into triangle ``i`` becomes ``a t_i``; each triangle also gets
    its edge ``u_i w_i``.
    """
    comp_of = {}
    for i, comp in enumerate(R.ge.nontrivial):
        for v in comp.vertices:
            comp_of[v] = i
    index = {o.index: r for r, o in enumerate(R.origin) if o.kind == "vertex"}
    edges = []
    for u, v in M.edges:
        if u in index and v in index:
            edges.append((index[u], index[v]))
        elif u in index or v in index:
            a, d = (u, v) if u in index else (v, u)
            edges.append((index[a], R.triangles[comp_of[d]][0]))
    for _, u, w in R.triangles:
        edges.append((u, w))
    return Matching(R.graph.n, edges)


# -------------------------------------------------------------- orchestrator

def _reduction_route(G: Graph, budget: int | None) -> SdKePartition:
    ge = gallai_edmonds(G)
    R = reduce(G, ge)
    sd_r = sd_oracle(R.graph, "J", budget)
    kept = R.kept()
    ke = frozenset(kept[r] for r in kept if r not in sd_r)
    return SdKePartition(frozenset(G.vertices) - ke, ke, "reduction+oracle")


def sdke(G: Graph, route: str | None = None, budget: int | None = DEFAULT_ENUM_BUDGET) -> SdKePartition:
    """Compute (SD(G), KE(G)).

    Without ``route`` the cheapest applicable route is used: leaf peeling
    for a unique perfect matching, Larson's set for any perfect matching,
    otherwise the Gallai-Edmonds reduction finished by the exhaustive
    J-structure oracle on R(G).
    """
    if route is None:
        unique, M = has_unique_perfect_matching(G)
        if unique:
            return algorithm1_sdke(G)
        route = "larson" if M is not None else "reduction+oracle"
    if route == "algorithm1":
        return algorithm1_sdke(G)
    if route == "larson":
        return larson_sdke(G, budget)
    if route == "reduction+oracle":
        return _reduction_route(G, budget)
    if route == "oracle":
        sd = sd_oracle(G, "J", budget)
        return SdKePartition(sd, frozenset(G.vertices) - sd, "oracle")
    raise ValueError(f"unknown route {route!r}; expected one of {ROUTES}")


def is_konig_egervary(G: Graph) -> bool:
    return independence_number(G) + matching_number(G) == G.n


def is_sd_graph(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> bool:
    return not sdke(G, budget=budget).ke
