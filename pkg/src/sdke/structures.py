"""Blossoms, flowers and posies relative to a matching.

Three strengths of structure are supported:

* ``T`` -- flowers whose stem is a path meeting the blossom only at its
  base, and posies whose connector is a path, whose blossoms meet in at
  most a path starting and ending with matched edges;
* ``S`` -- posies only: like ``T`` but the two blossoms may overlap freely;
* ``J`` -- stems and connectors may be arbitrary alternating walks.

The J variants are found per matching with the (vertex, last edge kind)
automaton from :mod:`sdke.matching`; T/S variants need explicit simple
path enumeration and are therefore budgeted.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .errors import BudgetExceeded
from .graph import DEFAULT_ENUM_BUDGET, Graph, bits, from_mask, to_mask
from .matching import (
    Kind,
    Matching,
    alternating_search,
    enumerate_maximum_matchings,
    is_alternating,
    matching_number,
    maximum_matching,
    walk_to,
)

BLOSSOM_BUDGET = 200_000
PATH_BUDGET = 2_000_000
VARIANTS = ("T", "S", "J")


@dataclass(frozen=True)
class Blossom:
    cycle: tuple[int, ...]
    base: int

    @property
    def mask(self) -> int:
        return to_mask(self.cycle)

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "base": self.base}

    @classmethod
    def from_json(cls, data: dict) -> Blossom:
        return cls(tuple(data["cycle"]), data["base"])


@dataclass(frozen=True)
class FlowerCertificate:
    """Blossom plus stem; ``stem`` runs from the root to the base."""

    variant: str
    matching: Matching
    blossom: Blossom
    stem: tuple[int, ...]

    kind = "flower"

    @property
    def root(self) -> int:
        return self.stem[0]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.blossom.cycle) | frozenset(self.stem)

    def edges(self) -> set[tuple[int, int]]:
        return _cycle_edges(self.blossom.cycle) | _walk_edges(self.stem)

    def to_json(self) -> dict:
        return {
            "kind": "flower",
            "variant": self.variant,
            "matching": self.matching.to_json(),
            "blossom": self.blossom.to_json(),
            "stem": list(self.stem),
            "root": self.root,
        }


@dataclass(frozen=True)
class PosyCertificate:
    """Two blossoms joined by ``connector``, which runs from ``blossom1.base`` to ``blossom2.base``."""

    variant: str
    matching: Matching
    blossom1: Blossom
    blossom2: Blossom
    connector: tuple[int, ...]

    kind = "posy"

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.blossom1.cycle) | frozenset(self.blossom2.cycle) | frozenset(self.connector)

    def edges(self) -> set[tuple[int, int]]:
        return _cycle_edges(self.blossom1.cycle) | _cycle_edges(self.blossom2.cycle) | _walk_edges(self.connector)

    def to_json(self) -> dict:
        return {
            "kind": "posy",
            "variant": self.variant,
            "matching": self.matching.to_json(),
            "blossoms": [self.blossom1.to_json(), self.blossom2.to_json()],
            "connector": list(self.connector),
        }


Certificate = Union[FlowerCertificate, PosyCertificate]


def certificate_from_json(data: dict, n: int) -> Certificate:
    M = Matching(n, (tuple(e) for e in data["matching"]))
    if data["kind"] == "flower":
        return FlowerCertificate(data["variant"], M, Blossom.from_json(data["blossom"]), tuple(data["stem"]))
    b1, b2 = data["blossoms"]
    return PosyCertificate(data["variant"], M, Blossom.from_json(b1), Blossom.from_json(b2), tuple(data["connector"]))


def _walk_edges(walk) -> set[tuple[int, int]]:
    return {(min(a, b), max(a, b)) for a, b in zip(walk, walk[1:])}


def _cycle_edges(cycle) -> set[tuple[int, int]]:
    return _walk_edges(tuple(cycle) + (cycle[0],))


# ------------------------------------------------------------------ blossoms

def _blossoms_at(G: Graph, M: Matching, base: int, budget: list[int]) -> Iterator[tuple[int, ...]]:
    """Cycles ``base, x1, ..., x2k`` with ``x1x2, x3x4, ...`` matched, each found once."""
    mate = M.mate
    path = [base]

    def extend(v: int, used: int) -> Iterator[tuple[int, ...]]:
        # v was entered by an unmatched edge; leave by its matched edge
        w = mate[v]
        if w == v or used >> w & 1:
            return
        path.append(w)
        used |= 1 << w
        if G.has_edge(w, base) and path[1] < w:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("blossom enumeration", BLOSSOM_BUDGET)
            yield tuple(path)
        for x in G.adj[w]:
            if x != mate[w] and not used >> x & 1:
                path.append(x)
                yield from extend(x, used | 1 << x)
                path.pop()
        path.pop()

    for x in G.adj[base]:
        if x != mate[base]:
            path.append(x)
            yield from extend(x, 1 << base | 1 << x)
            path.pop()


def find_blossoms(G: Graph, M: Matching, budget: int = BLOSSOM_BUDGET) -> Iterator[Blossom]:
    """Every ``M``-blossom, grouped by base in increasing order.

    A cycle is reported with its base first and oriented so that the second
    vertex is smaller than the last.
    """
    left = [budget]
    for b in G.vertices:
        for cyc in sorted(_blossoms_at(G, M, b, left)):
            yield Blossom(cyc, b)


# ------------------------------------------------------- per-matching analysis

class MatchingAnalysis:
    """Caches blossoms and alternating reachability for one matching."""

    def __init__(self, G: Graph, M: Matching, blossom_budget: int = BLOSSOM_BUDGET):
        self.G = G
        self.M = M
        self.blossoms: dict[int, list[Blossom]] = {}
        for B in find_blossoms(G, M, blossom_budget):
            self.blossoms.setdefault(B.base, []).append(B)
        self.base_mask = to_mask(self.blossoms)
        self.blossom_union = {b: _union(B.mask for B in bl) for b, bl in self.blossoms.items()}
        self.unsat_mask = G.full_mask & ~M.saturated_mask
        self._search: dict[tuple[int, Kind], dict] = {}

    def search(self, v: int, first: Kind) -> dict:
        key = (v, first)
        if key not in self._search:
            self._search[key] = alternating_search(self.G, self.M, v, first)
        return self._search[key]

    def arrivals(self, v: int, first: Kind, last: Kind) -> int:
        return to_mask(u for u, k in self.search(v, first) if k is last)

    # a walk reaching a base along its matched edge can be closed by that base's blossom
    def hits_base(self, v: int, first: Kind) -> bool:
        return bool(self.arrivals(v, first, Kind.MATCHED) & self.base_mask)

    def hits_root(self, v: int, first: Kind) -> bool:
        return bool(self.arrivals(v, first, Kind.UNMATCHED) & self.unsat_mask)

    @cached_property
    def flower_bases(self) -> int:
        """Bases from which an even alternating walk (first edge matched) reaches an exposed vertex."""
        mask = 0
        for b in self.blossoms:
            if self.unsat_mask >> b & 1 or self.hits_root(b, Kind.MATCHED):
                mask |= 1 << b
        return mask

    @cached_property
    def posy_bases(self) -> int:
        mask = 0
        for b in self.blossoms:
            if self.hits_base(b, Kind.MATCHED):
                mask |= 1 << b
        return mask

    @cached_property
    def j_flower_mask(self) -> int:
        out = _union(self.blossom_union[b] for b in bits(self.flower_bases))
        for v in self.G.vertices:
            if out >> v & 1:
                continue
            M_, N_ = Kind.MATCHED, Kind.UNMATCHED
            on_stem = (
                (self.hits_base(v, M_) and self.hits_root(v, N_))
                or (self.hits_base(v, N_) and self.hits_root(v, M_))
                or (self.unsat_mask >> v & 1 and self.hits_base(v, N_))
            )
            if on_stem:
                out |= 1 << v
        return out

    @cached_property
    def j_posy_mask(self) -> int:
        out = _union(self.blossom_union[b] for b in bits(self.posy_bases))
        for v in self.G.vertices:
            if not out >> v & 1 and self.hits_base(v, Kind.MATCHED) and self.hits_base(v, Kind.UNMATCHED):
                out |= 1 << v
        return out

    # -------------------------------------------------------- J witnesses

    def _blossom_with(self, b: int, v: int | None = None) -> Blossom:
        for B in self.blossoms[b]:
            if v is None or v in B.cycle:
                return B
        raise LookupError(v)

    def _walk(self, v: int, first: Kind, target_mask: int, last: Kind) -> list[int]:
        pred = self.search(v, first)
        # BFS insertion order makes the first hit a shortest walk
        for state in pred:
            if state[1] is last and target_mask >> state[0] & 1:
                return walk_to(pred, v, state)
        raise LookupError((v, first))

    def j_flower_certificate(self, v: int) -> FlowerCertificate | None:
        if not self.j_flower_mask >> v & 1:
            return None
        M_, N_ = Kind.MATCHED, Kind.UNMATCHED
        for b in bits(self.flower_bases):
            if self.blossom_union[b] >> v & 1:
                if self.unsat_mask >> b & 1:
                    stem = [b]
                else:
                    stem = self._walk(b, M_, self.unsat_mask, N_)[::-1]
                return FlowerCertificate("J", self.M, self._blossom_with(b, v), tuple(stem))
        if self.unsat_mask >> v & 1:
            stem = self._walk(v, N_, self.base_mask, M_)
        else:
            first = M_ if self.hits_base(v, M_) and self.hits_root(v, N_) else N_
            to_base = self._walk(v, first, self.base_mask, M_)
            to_root = self._walk(v, first.flip(), self.unsat_mask, N_)
            stem = to_root[::-1] + to_base[1:]
        base = stem[-1]
        return FlowerCertificate("J", self.M, self._blossom_with(base), tuple(stem))

    def j_posy_certificate(self, v: int) -> PosyCertificate | None:
        if not self.j_posy_mask >> v & 1:
            return None
        M_, N_ = Kind.MATCHED, Kind.UNMATCHED
        for b in bits(self.posy_bases):
            if self.blossom_union[b] >> v & 1:
                conn = self._walk(b, M_, self.base_mask, M_)
                return PosyCertificate("J", self.M, self._blossom_with(b, v), self._blossom_with(conn[-1]), tuple(conn))
        left = self._walk(v, M_, self.base_mask, M_)
        right = self._walk(v, N_, self.base_mask, M_)
        conn = left[::-1] + right[1:]
        return PosyCertificate("J", self.M, self._blossom_with(conn[0]), self._blossom_with(conn[-1]), tuple(conn))

    # ------------------------------------------------------- T / S search

    @cached_property
    def _paths(self) -> tuple[dict[int, list[tuple[int, ...]]], dict[int, list[tuple[int, ...]]]]:
        """Simple alternating paths out of each base, first edge matched.

        Returns ``(stems, connectors)``: stems end at an exposed vertex,
        connectors end on a matched edge at another base.
        """
        G, mate = self.G, self.M.mate
        stems: dict[int, list[tuple[int, ...]]] = {}
        conns: dict[int, list[tuple[int, ...]]] = {}
        budget = [PATH_BUDGET]

        def grow(path: list[int], used: int, b: int) -> None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("alternating path enumeration", PATH_BUDGET)
            v = path[-1]
            w = mate[v]
            if w == v or used >> w & 1:
                return
            path.append(w)
            if self.base_mask >> w & 1:
                conns[b].append(tuple(path))
            for x in G.adj[w]:
                if x == mate[w] or used >> x & 1 or x == w:
                    continue
                path.append(x)
                if self.unsat_mask >> x & 1:
                    stems[b].append(tuple(path))
                else:
                    grow(path, used | 1 << w | 1 << x, b)
                path.pop()
            path.pop()

        for b in self.blossoms:
            stems[b] = [(b,)] if self.unsat_mask >> b & 1 else []
            conns[b] = []
            grow([b], 1 << b, b)
        return stems, conns

    def t_flowers(self) -> Iterator[FlowerCertificate]:
        stems, _ = self._paths
        for b, bl in sorted(self.blossoms.items()):
            for path in stems[b]:
                pm = to_mask(path)
                for B in bl:
                    if pm & B.mask == 1 << b:
                        yield FlowerCertificate("T", self.M, B, path[::-1])

    def posies(self, variant: str) -> Iterator[PosyCertificate]:
        """S-posies, or T-posies when ``variant == "T"``."""
        _, conns = self._paths
        for b1, paths in sorted(conns.items()):
            for path in paths:
                b2 = path[-1]
                if b2 < b1:
                    continue
                inner = to_mask(path[1:-1])
                for B1 in self.blossoms[b1]:
                    if inner & B1.mask:
                        continue
                    for B2 in self.blossoms[b2]:
                        if inner & B2.mask:
                            continue
                        if variant == "T" and not _meet_in_mm_path(self.M, B1, B2):
                            continue
                        yield PosyCertificate(variant, self.M, B1, B2, path)

    def t_masks(self) -> tuple[int, int]:
        """(flower vertices, posy vertices) over all T-structures of this matching."""
        flowers = 0
        for c in self.t_flowers():
            flowers |= to_mask(c.vertices)
        posy = 0
        _, conns = self._paths
        full = self.G.full_mask
        for b1, paths in sorted(conns.items()):
            for path in paths:
                b2 = path[-1]
                if b2 < b1:
                    continue
                pm = to_mask(path)
                inner = pm & ~(1 << b1 | 1 << b2)
                for B1 in self.blossoms[b1]:
                    if inner & B1.mask:
                        continue
                    for B2 in self.blossoms[b2]:
                        cover = pm | B1.mask | B2.mask
                        if cover & ~posy == 0 or inner & B2.mask:
                            continue
                        if _meet_in_mm_path(self.M, B1, B2):
                            posy |= cover
                if posy == full:
                    return flowers, posy
        return flowers, posy

    def has_t_flower(self) -> bool:
        return next(self.t_flowers(), None) is not None

    def has_posy(self, variant: str) -> bool:
        return next(self.posies(variant), None) is not None


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _meet_in_mm_path(M: Matching, B1: Blossom, B2: Blossom) -> bool:
    """Blossoms are disjoint, or share exactly a path whose end edges are matched."""
    common = B1.mask & B2.mask
    if not common:
        return True
    shared = _cycle_edges(B1.cycle) & _cycle_edges(B2.cycle)
    if not shared:
        return False
    deg: dict[int, int] = {}
    for u, v in shared:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if to_mask(deg) != common or any(d > 2 for d in deg.values()):
        return False
    ends = [v for v, d in deg.items() if d == 1]
    if len(ends) != 2:
        return False
    # walk the shared path from one end
    path = [ends[0]]
    prev = None
    while len(path) <= len(shared):
        cur = path[-1]
        nxt = [w for (a, b) in shared for w in ((b,) if a == cur else (a,) if b == cur else ()) if w != prev]
        if not nxt:
            break
        prev = cur
        path.append(nxt[0])
    if len(path) != len(shared) + 1 or path[-1] != ends[1]:
        return False
    return (
        is_alternating(M, path)
        and M.contains(path[0], path[1])
        and M.contains(path[-2], path[-1])
    )


# ------------------------------------------------------------ public API

def j_structure_vertices(G: Graph, M: Matching) -> tuple[frozenset[int], frozenset[int]]:
    """(vertices on some M-Jflower, vertices on some M-Jposy)."""
    a = MatchingAnalysis(G, M)
    return from_mask(a.j_flower_mask), from_mask(a.j_posy_mask)


def t_structure_vertices(G: Graph, M: Matching) -> tuple[frozenset[int], frozenset[int]]:
    """(vertices on some M-Tflower, vertices on some M-Tposy)."""
    flowers, posy = MatchingAnalysis(G, M).t_masks()
    return from_mask(flowers), from_mask(posy)


def _maximum_matchings(G: Graph, budget: int | None) -> Iterator[Matching]:
    return enumerate_maximum_matchings(G, budget)


def sd_oracle(G: Graph, variant: str = "J", budget: int | None = DEFAULT_ENUM_BUDGET) -> frozenset[int]:
    """Vertices lying in a flower or posy of the given variant for some maximum matching."""
    if variant not in ("T", "J"):
        raise ValueError(f"variant must be 'T' or 'J', not {variant!r}")
    full = G.full_mask
    out = 0
    for M in _maximum_matchings(G, budget):
        a = MatchingAnalysis(G, M)
        if variant == "J":
            out |= a.j_flower_mask | a.j_posy_mask
        else:
            f, p = a.t_masks()
            out |= f | p
        if out == full:
            break
    return from_mask(out)


def posy_flower_sets(G: Graph, budget: int | None = DEFAULT_ENUM_BUDGET) -> tuple[frozenset[int], frozenset[int]]:
    """(Posy(G), Flower(G)) taken over T-structures of all maximum matchings."""
    posy = flowers = 0
    for M in _maximum_matchings(G, budget):
        f, p = MatchingAnalysis(G, M).t_masks()
        flowers |= f
        posy |= p
    return from_mask(posy), from_mask(flowers)


def has_obstruction(G: Graph, M: Matching, posy_variant: str = "S") -> bool:
    """Whether ``M`` admits a T-flower or a posy of ``posy_variant`` ("T", "S" or "J")."""
    a = MatchingAnalysis(G, M)
    if posy_variant == "J":
        return bool(a.j_flower_mask | a.j_posy_mask)
    return a.has_t_flower() or a.has_posy(posy_variant)


def iter_certificates(G: Graph, M: Matching, variant: str) -> Iterator[Certificate]:
    """Every T-flower plus every posy of ``variant`` ("T"/"S"), or one J witness per covered vertex."""
    a = MatchingAnalysis(G, M)
    if variant == "J":
        for v in G.vertices:
            for c in (a.j_flower_certificate(v), a.j_posy_certificate(v)):
                if c is not None:
                    yield c
        return
    yield from a.t_flowers()
    yield from a.posies(variant)


def certify_vertex(G: Graph, v: int, budget: int | None = DEFAULT_ENUM_BUDGET) -> Certificate | None:
    """A J-witness placing ``v`` in SD(G), or ``None`` when ``v`` lies in KE(G).

    The canonical maximum matching is tried first, then every maximum matching
    in enumeration order. Flowers are preferred over posies.
    """
    first = maximum_matching(G)
    rest = (m for m in _maximum_matchings(G, budget) if m != first)
    for M in itertools.chain([first], rest):
        a = MatchingAnalysis(G, M)
        cert = a.j_flower_certificate(v) or a.j_posy_certificate(v)
        if cert is not None:
            return cert
    return None


# ---------------------------------------------------------- verification

def _valid_blossom(G: Graph, M: Matching, B: Blossom) -> bool:
    cyc = B.cycle
    L = len(cyc)
    if L < 3 or L % 2 == 0 or len(set(cyc)) != L or B.base not in cyc:
        return False
    if any(not (0 <= v < G.n) for v in cyc):
        return False
    edges = list(zip(cyc, cyc[1:] + cyc[:1]))
    if any(not G.has_edge(a, b) for a, b in edges):
        return False
    matched = [(a, b) for a, b in edges if M.contains(a, b)]
    if len(matched) != L // 2:
        return False
    covered = {x for e in matched for x in e}
    return covered == set(cyc) - {B.base}


def _walk_ok(G: Graph, M: Matching, walk: tuple[int, ...]) -> bool:
    return all(0 <= v < G.n for v in walk) and is_alternating(M, list(walk), G)


def verify_certificate(G: Graph, cert: Certificate) -> bool:
    """Check every structural requirement of the certificate's variant against ``G``."""
    M = cert.matching
    if M.n != G.n or not M.is_matching_of(G) or len(M) != matching_number(G):
        return False
    if isinstance(cert, FlowerCertificate):
        B, stem = cert.blossom, cert.stem
        if cert.variant not in ("T", "J") or not stem or not _valid_blossom(G, M, B):
            return False
        if stem[-1] != B.base or M.is_saturated(stem[0]) or not _walk_ok(G, M, stem):
            return False
        if (len(stem) - 1) % 2:
            return False
        if len(stem) > 1 and not M.contains(stem[-1], stem[-2]):
            return False
        if cert.variant == "T":
            if len(set(stem)) != len(stem) or set(stem) & set(B.cycle) != {B.base}:
                return False
        return True
    if isinstance(cert, PosyCertificate):
        B1, B2, conn = cert.blossom1, cert.blossom2, cert.connector
        if cert.variant not in VARIANTS or len(conn) < 2:
            return False
        if not (_valid_blossom(G, M, B1) and _valid_blossom(G, M, B2)):
            return False
        if conn[0] != B1.base or conn[-1] != B2.base or not _walk_ok(G, M, conn):
            return False
        if not (M.contains(conn[0], conn[1]) and M.contains(conn[-2], conn[-1])):
            return False
        if cert.variant in ("S", "T"):
            if len(set(conn)) != len(conn):
                return False
            if set(conn[1:-1]) & (set(B1.cycle) | set(B2.cycle)):
                return False
            if B1 == B2:
                return False
        if cert.variant == "T" and not _meet_in_mm_path(M, B1, B2):
            return False
        return True
    return False
