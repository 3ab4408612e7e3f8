import dataclasses

import pytest
from hypothesis import given, settings

from sdke.corpus import all_graphs, barbell, complete, cycle, graphs_up_to, path, petersen, triangle_with_path
from sdke.decomposition import is_konig_egervary, sdke
from sdke.errors import BudgetExceeded
from sdke.matching import Matching, enumerate_maximum_matchings, is_perfect
from sdke.structures import (
    Blossom,
    FlowerCertificate,
    PosyCertificate,
    certificate_from_json,
    certify_vertex,
    find_blossoms,
    has_obstruction,
    iter_certificates,
    j_structure_vertices,
    posy_flower_sets,
    sd_oracle,
    t_structure_vertices,
    verify_certificate,
)

from . import oracles
from .test_graph import graphs

ALL = frozenset(range(6))


def c3_flower(base=2):
    return FlowerCertificate("T", Matching(3, [(0, 1)]), Blossom((2, 0, 1), base), (base,))


def barbell_posy():
    M = Matching(6, [(0, 1), (2, 3), (4, 5)])
    return PosyCertificate("T", M, Blossom((2, 0, 1), 2), Blossom((3, 4, 5), 3), (2, 3))


class TestBlossoms:
    def test_triangle(self):
        assert list(find_blossoms(cycle(3), Matching(3, [(0, 1)]))) == [Blossom((2, 0, 1), 2)]

    def test_even_cycle(self):
        for M in enumerate_maximum_matchings(cycle(4)):
            assert list(find_blossoms(cycle(4), M)) == []

    def test_k4(self):
        found = set(find_blossoms(complete(4), Matching(4, [(0, 1), (2, 3)])))
        assert Blossom((2, 0, 1), 2) in found
        assert {(frozenset(b.cycle), b.base) for b in found} == {
            (frozenset({0, 1, 2}), 2),
            (frozenset({0, 1, 3}), 3),
            (frozenset({0, 2, 3}), 0),
            (frozenset({1, 2, 3}), 1),
        }

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            list(find_blossoms(complete(9), next(enumerate_maximum_matchings(complete(9))), budget=5))

    @settings(max_examples=60, deadline=None)
    @given(graphs(max_n=7))
    def test_against_odd_cycle_scan(self, G):
        for M in list(enumerate_maximum_matchings(G))[:3]:
            ours = {(frozenset(b.cycle), b.base) for b in find_blossoms(G, M)}
            assert ours == oracles.blossoms(G, M.edges)


class TestStructureVertices:
    def test_j_examples(self):
        assert j_structure_vertices(cycle(3), Matching(3, [(0, 1)])) == ({0, 1, 2}, frozenset())
        assert j_structure_vertices(complete(2), Matching(2, [(0, 1)])) == (frozenset(), frozenset())
        pm = Matching(6, [(0, 1), (2, 3), (4, 5)])
        assert j_structure_vertices(barbell(), pm) == (frozenset(), ALL)

    def test_t_examples(self):
        assert t_structure_vertices(cycle(3), Matching(3, [(0, 1)]))[0] == {0, 1, 2}
        pm = Matching(6, [(0, 1), (2, 3), (4, 5)])
        assert t_structure_vertices(barbell(), pm)[1] == ALL
        for M in enumerate_maximum_matchings(cycle(4)):
            assert t_structure_vertices(cycle(4), M) == (frozenset(), frozenset())

    def test_j_against_walk_oracle_exhaustive(self):
        for G in graphs_up_to(6):
            for M in enumerate_maximum_matchings(G):
                assert j_structure_vertices(G, M) == oracles.j_structure_vertices(G, M.edges), G

    @settings(max_examples=40, deadline=None)
    @given(graphs(max_n=8))
    def test_t_inside_j(self, G):
        M = next(enumerate_maximum_matchings(G))
        tf, tp = t_structure_vertices(G, M)
        jf, jp = j_structure_vertices(G, M)
        assert tf <= jf and tp <= jp


class TestOracle:
    def test_examples(self):
        assert sd_oracle(complete(2)) == frozenset()
        assert sd_oracle(cycle(3)) == {0, 1, 2}
        assert sd_oracle(path(4)) == frozenset()
        assert sd_oracle(cycle(3), "T") == {0, 1, 2}

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            sd_oracle(cycle(3), "S")

    def test_posy_flower_sets(self):
        assert posy_flower_sets(barbell()) == (ALL, frozenset())
        assert posy_flower_sets(cycle(3))[1] == {0, 1, 2}
        assert posy_flower_sets(cycle(4)) == (frozenset(), frozenset())

    def test_single_perfect_matching_sees_sd(self):
        # any one perfect matching already exposes all of SD(G) through Jposies
        for G in graphs_up_to(7):
            sd = None
            for M in enumerate_maximum_matchings(G):
                if not is_perfect(M, G):
                    break
                if sd is None:
                    sd = sdke(G).sd
                assert j_structure_vertices(G, M)[1] >= sd


class TestVerify:
    def test_examples(self):
        assert verify_certificate(cycle(3), c3_flower())
        assert not verify_certificate(cycle(3), c3_flower(base=0))
        assert verify_certificate(barbell(), barbell_posy())

    def test_rejects(self):
        G = barbell()
        cert = barbell_posy()
        assert not verify_certificate(G, dataclasses.replace(cert, connector=(2, 1, 0)))
        assert not verify_certificate(G, dataclasses.replace(cert, blossom2=cert.blossom1))
        assert not verify_certificate(G, dataclasses.replace(cert, variant="X"))
        non_max = Matching(6, [(0, 1), (4, 5)])
        assert not verify_certificate(G, dataclasses.replace(cert, matching=non_max))
        assert not verify_certificate(triangle_with_path(), c3_flower())

    def test_flower_stem_rules(self):
        G = triangle_with_path()  # triangle 0-1-2, path 2-3-4
        M = Matching(5, [(0, 1), (2, 3)])
        good = FlowerCertificate("T", M, Blossom((2, 0, 1), 2), (4, 3, 2))
        assert verify_certificate(G, good)
        assert not verify_certificate(G, dataclasses.replace(good, stem=(3, 2)))  # saturated root
        assert not verify_certificate(G, dataclasses.replace(good, stem=(4, 3)))  # misses the base

    def test_json_roundtrip(self):
        for G in (cycle(3), barbell(), petersen(), triangle_with_path()):
            for v in G.vertices:
                cert = certify_vertex(G, v)
                if cert is None:
                    continue
                back = certificate_from_json(cert.to_json(), G.n)
                assert back == cert and verify_certificate(G, back)

    def test_emitted_certificates_verify(self):
        for G in graphs_up_to(6):
            for M in list(enumerate_maximum_matchings(G))[:4]:
                for variant in ("T", "S", "J"):
                    for cert in iter_certificates(G, M, variant):
                        assert verify_certificate(G, cert), (G, cert)


class TestCertify:
    def test_examples(self):
        cert = certify_vertex(cycle(3), 2)
        assert cert.kind == "flower" and cert.blossom.base == 2
        assert certify_vertex(complete(2), 0) is None
        cert = certify_vertex(barbell(), 0)
        assert cert.kind == "posy" and verify_certificate(barbell(), cert)

    def test_every_sd_vertex_is_certified(self):
        for G in graphs_up_to(6):
            sd = sd_oracle(G)
            for v in G.vertices:
                cert = certify_vertex(G, v)
                assert (cert is not None) == (v in sd)
                if cert is not None:
                    assert v in cert.vertices and verify_certificate(G, cert)


@pytest.mark.slow
def test_t_and_j_oracles_agree_order_eight():
    for G in all_graphs(8, connected=True):
        assert sd_oracle(G, "T") == sd_oracle(G, "J"), G


@pytest.mark.slow
def test_obstruction_quantifiers_order_eight():
    for G in all_graphs(8, connected=True):
        non_ke = not is_konig_egervary(G)
        ms = list(enumerate_maximum_matchings(G))
        assert non_ke == all(has_obstruction(G, M, "S") for M in ms), G
        assert non_ke == any(has_obstruction(G, M, "T") for M in ms), G


@pytest.mark.slow
def test_single_perfect_matching_sees_sd_order_eight():
    for G in all_graphs(8):
        M = next(enumerate_maximum_matchings(G))
        if is_perfect(M, G):
            assert j_structure_vertices(G, M)[1] >= sdke(G).sd, G
