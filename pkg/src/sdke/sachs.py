"""Sachs subgraphs: spanning subgraphs whose components are single edges or cycles."""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from .errors import BudgetExceeded
from .graph import DEFAULT_ENUM_BUDGET, Graph, bits, from_mask, norm_edge, to_mask

SUBSET_BUDGET = 1 << 22


@dataclass(frozen=True)
class SachsComponent:
    kind: str  # "K2" or "cycle"
    vertices: tuple[int, ...]  # cycles listed in traversal order

    @property
    def is_odd_cycle(self) -> bool:
        return self.kind == "cycle" and len(self.vertices) % 2 == 1

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        if self.kind == "K2":
            return [norm_edge(*vs)]
        return [norm_edge(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]


@dataclass(frozen=True)
class SachsSubgraph:
    components: tuple[SachsComponent, ...]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(e for c in self.components for e in c.edges()))

    def odd_cycles(self) -> list[SachsComponent]:
        return [c for c in self.components if c.is_odd_cycle]

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.edges],
            "components": [{"kind": c.kind, "vertices": list(c.vertices)} for c in self.components],
        }


def _cycles_from(G: Graph, v: int, allowed: int, keep: Callable[[int], bool]) -> Iterator[tuple[int, ...]]:
    """Simple cycles through ``v`` inside ``allowed``, each once (second vertex < last)."""
    path = [v]

    def dfs(u: int, used: int) -> Iterator[tuple[int, ...]]:
        if len(path) >= 3 and G.masks[u] >> v & 1 and path[1] < u and keep(len(path)):
            yield tuple(path)
        for w in bits(G.masks[u] & allowed & ~used):
            path.append(w)
            yield from dfs(w, used | 1 << w)
            path.pop()

    yield from dfs(v, 1 << v)


def _sachs(
    G: Graph,
    within: int,
    allow_k2: bool,
    keep_cycle: Callable[[int], bool],
    budget: int | None,
) -> Iterator[tuple[SachsComponent, ...]]:
    chosen: list[SachsComponent] = []
    count = 0

    def rec(free: int) -> Iterator[tuple[SachsComponent, ...]]:
        nonlocal count
        if not free:
            count += 1
            if budget is not None and count > budget:
                raise BudgetExceeded("Sachs subgraph enumeration", budget)
            yield tuple(chosen)
            return
        v = (free & -free).bit_length() - 1
        rest = free & ~(1 << v)
        if allow_k2:
            for u in bits(G.masks[v] & rest):
                chosen.append(SachsComponent("K2", (v, u)))
                yield from rec(rest & ~(1 << u))
                chosen.pop()
        # v is the least free vertex, so every cycle through it is new
        for cyc in _cycles_from(G, v, rest, keep_cycle):
            chosen.append(SachsComponent("cycle", cyc))
            yield from rec(free & ~to_mask(cyc))
            chosen.pop()

    yield from rec(within)


def _any_length(_: int) -> bool:
    return True


def _odd_length(k: int) -> bool:
    return k % 2 == 1


def enumerate_sachs(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> Iterator[SachsSubgraph]:
    """Every Sachs subgraph of ``G`` exactly once."""
    for comps in _sachs(G, G.full_mask, True, _any_length, budget):
        yield SachsSubgraph(comps)


def has_sachs_subgraph(G: Graph, within: int | None = None) -> bool:
    """Whether ``G[within]`` (all of ``G`` by default) has a Sachs subgraph."""
    mask = G.full_mask if within is None else within
    return next(_sachs(G, mask, True, _any_length, None), None) is not None


def has_odd_cycle_factor(G: Graph) -> tuple[bool, SachsSubgraph | None]:
    """A spanning 2-regular subgraph made of odd cycles, if there is one."""
    if G.n == 0:
        return False, None
    found = next(_sachs(G, G.full_mask, False, _odd_length, None), None)
    if found is None:
        return False, None
    return True, SachsSubgraph(found)


def has_triangle_factor(G: Graph) -> tuple[bool, list[tuple[int, int, int]] | None]:
    """Partition of V(G) into vertex-disjoint triangles, if one exists."""
    if G.n % 3:
        return False, None
    chosen: list[tuple[int, int, int]] = []

    def rec(free: int) -> bool:
        if not free:
            return True
        v = (free & -free).bit_length() - 1
        nb = G.masks[v] & free
        for u in bits(nb):
            for w in bits(nb & G.masks[u] & ~((2 << u) - 1)):
                chosen.append((v, u, w))
                if rec(free & ~(1 << v | 1 << u | 1 << w)):
                    return True
                chosen.pop()
        return False

    if rec(G.full_mask):
        return True, list(chosen)
    return False, None


@dataclass(frozen=True)
class SachsCriticality:
    holds: bool
    witness: frozenset[int] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _isolated_after(G: Graph, removed: int) -> int:
    return sum(1 for v in G.vertices if not removed >> v & 1 and not G.masks[v] & ~removed)


def k_sachs_critical(G: Graph, k: int, budget: int | None = SUBSET_BUDGET) -> SachsCriticality:
    """Check ``i(G - S) <= |S| - k`` for every ``S`` with ``|S| >= k``.

    Sets are scanned by size, then lexicographically; the first violator is
    returned as the witness.
    """
    seen = 0
    for size in range(k, G.n + 1):
        for S in itertools.combinations(G.vertices, size):
            seen += 1
            if budget is not None and seen > budget:
                raise BudgetExceeded("k-Sachs criticality scan", budget)
            if _isolated_after(G, to_mask(S)) > size - k:
                return SachsCriticality(False, frozenset(S))
    return SachsCriticality(True)


def k_sachs_critical_by_definition(G: Graph, k: int) -> bool:
    """``G - S`` has a Sachs subgraph for every ``k``-subset ``S``."""
    return all(
        has_sachs_subgraph(G, G.full_mask & ~to_mask(S))
        for S in itertools.combinations(G.vertices, k)
    )


def odd_sachs_cover(G: Graph) -> frozenset[int]:
    """Union of the odd cycles appearing in Sachs subgraphs of ``G``.

    For each vertex not yet covered, odd cycles through it are tried until
    one whose complement still carries a Sachs subgraph turns up; the whole
    cycle is then marked covered.
    """
    covered = 0
    for v in G.vertices:
        if covered >> v & 1:
            continue
        for cyc in _cycles_from(G, v, G.full_mask & ~(1 << v), _odd_length):
            cm = to_mask(cyc)
            if cm & ~covered and has_sachs_subgraph(G, G.full_mask & ~cm):
                covered |= cm
                break
    return from_mask(covered)
