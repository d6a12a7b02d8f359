import pytest

from nilsym import (
    LieAlgebra,
    MalformedInputError,
    characteristic_sequence,
    decide_symplectic,
    derived_algebra,
    lower_central_series,
    nilindex,
    validate,
    verify_certificate,
)
from nilsym.catalog import (
    SimpleGraph,
    connected_graphs,
    free_two_step,
    graph_algebra,
    graph_symplectic_criterion,
    heisenberg,
    list_entries,
    named,
)
from nilsym.exterior import ce_differential, is_nondegenerate

ENTRIES = list_entries()


class TestConstructors:
    def test_h3(self):
        L = heisenberg(1)
        assert L.dim == 3 and L.bracket([1, 0, 0], [0, 1, 0]) == [0, 0, 1]

    def test_h5(self):
        L = heisenberg(2)
        assert [s.dim for s in lower_central_series(L)] == [5, 1, 0]

    def test_h7(self):
        assert heisenberg(3).dim == 7

    def test_free_k2(self):
        assert dict(free_two_step(2).constants) == dict(heisenberg(1).constants)

    def test_free_k3(self):
        L = free_two_step(3)
        assert L.dim == 6 and decide_symplectic(L).decision

    def test_free_k4(self):
        L = free_two_step(4)
        assert L.dim == 10 and not decide_symplectic(L).decision


class TestGraphs:
    def test_edge(self):
        assert dict(graph_algebra(SimpleGraph(2, [(0, 1)])).constants) == dict(heisenberg(1).constants)

    def test_triangle(self):
        G = SimpleGraph(3, [(0, 1), (0, 2), (1, 2)])
        assert dict(graph_algebra(G).constants) == dict(free_two_step(3).constants)
        assert graph_symplectic_criterion(G) is True
        assert decide_symplectic(graph_algebra(G)).decision

    def test_k4(self):
        G = SimpleGraph(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
        assert graph_symplectic_criterion(G) is False
        assert not decide_symplectic(graph_algebra(G)).decision

    def test_four_cycle(self):
        G = SimpleGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        L = graph_algebra(G)
        assert L.dim == 8 and nilindex(L) == 2
        assert graph_symplectic_criterion(G) is True
        assert decide_symplectic(L).decision

    def test_odd_rejected(self):
        with pytest.raises(MalformedInputError):
            graph_symplectic_criterion(SimpleGraph(2, [(0, 1)]))

    def test_bad_edges(self):
        with pytest.raises(MalformedInputError):
            SimpleGraph(2, [(0, 0)])
        with pytest.raises(MalformedInputError):
            SimpleGraph(2, [(0, 1), (1, 0)])

    def test_enumeration_count_matches_networkx(self):
        nx = pytest.importorskip("networkx")
        expected = 0
        for H in nx.graph_atlas_g()[1:]:
            v, e = H.number_of_nodes(), H.number_of_edges()
            if v + e <= 10 and nx.is_connected(H):
                expected += 1
        assert sum(1 for _ in connected_graphs(10)) == expected

    def test_disconnected_components(self):
        # two disjoint triangles plus nothing else: each component has 3 <= 3
        G = SimpleGraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert graph_symplectic_criterion(G)
        assert decide_symplectic(graph_algebra(G)).decision


class TestEntries:
    def test_count(self):
        assert len(ENTRIES) >= 18

    def test_unique_names(self):
        names = [e.name for e in ENTRIES]
        assert len(names) == len(set(names))

    def test_stable_order(self):
        assert [e.name for e in list_entries()] == [e.name for e in ENTRIES]

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_valid_and_declared_invariants(self, entry):
        L = entry.algebra
        assert validate(L).ok
        x = entry.expected
        if x.charseq is not None:
            assert characteristic_sequence(L, seed=0) == x.charseq
        if x.nilindex is not None:
            assert nilindex(L) == x.nilindex

    @pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.name)
    def test_decision_matches(self, entry):
        cert = decide_symplectic(entry.algebra)
        if entry.expected.symplectic in ("yes", "no"):
            assert cert.decision == (entry.expected.symplectic == "yes")
        assert verify_certificate(entry.algebra, cert)

    @pytest.mark.parametrize("entry", [e for e in ENTRIES if e.expected.witness], ids=lambda e: e.name)
    def test_displayed_witness(self, entry):
        w = entry.expected.witness
        assert ce_differential(entry.algebra, w).is_zero()
        assert is_nondegenerate(entry.algebra, w)

    def test_k8(self):
        assert named("k8").expected.symplectic == "no"

    def test_h82_rigid_witness(self):
        w = named("h82_rigid").expected.witness
        assert w.coeffs == {(0, 7): 1, (1, 6): 1, (2, 5): -1, (3, 4): 1}

    def test_real_forms(self):
        assert named("n6_20_1").expected.field_note == "real-form"

    def test_unknown(self):
        with pytest.raises(KeyError):
            named("nope")

    def test_nosym_general_parametric(self):
        e = named("nosym_general(6)")
        assert e.algebra.dim == 12 and e.expected.symplectic == "unknown"

    def test_nosym_general_4_is_nosym8_negated(self):
        a = named("nosym_general(4)").algebra
        b = named("nosym8").algebra
        neg = {k: {i: -c for i, c in v} for k, v in b.constants.items()}
        assert dict(a.constants) == dict(LieAlgebra(8, neg).constants)

    def test_k8_generators(self):
        L = named("k8").algebra
        assert L.dim - derived_algebra(L).dim == 6


def test_nosym_general_frozen_decisions():
    from nilsym.oracle import oracle_symplectic

    small = named("nosym_general(3)").algebra
    assert decide_symplectic(small).decision and oracle_symplectic(small, samples=2000)
    big = named("nosym_general(5)").algebra
    cert = decide_symplectic(big)
    assert not cert.decision and verify_certificate(big, cert, seed=3)
