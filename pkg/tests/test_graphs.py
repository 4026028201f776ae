"""Graph primitives: construction, surgery, canonical forms, enumeration."""

import random

import pytest

from mdgame import Graph, TooLarge, canonical_form, connected_graphs
from mdgame.families import complete, cycle, path, star


# ----------------------------------------------------------------------
# construction and validation
# ----------------------------------------------------------------------

class TestConstruction:
    def test_from_edges(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert g.degree(1) == 2
        assert sorted(g.neighbors(1)) == [0, 2]
        assert g.edges() == [(0, 1), (1, 2)]
        assert g.edge_count == 2

    def test_empty(self):
        g = Graph.empty(4)
        assert g.edge_count == 0
        assert not g.is_connected()

    def test_rejects_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(1, 1)])

    def test_rejects_out_of_range_endpoint(self):
        with pytest.raises(ValueError):
            Graph.from_edges(2, [(0, 2)])

    def test_rejects_asymmetric_rows(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0b00))

    def test_rejects_size_mismatch(self):
        with pytest.raises(ValueError):
            Graph(3, (0, 0))


class TestSurgery:
    def test_delete_vertex_compacts(self):
        # deleting the middle of P3 leaves two isolated vertices, relabeled
        g = path(3).delete_vertex(1)
        assert g.n == 2
        assert g.edge_count == 0

    def test_delete_edge(self):
        g = cycle(4).delete_edge(0, 1)
        assert g.edge_count == 3
        assert g.is_connected()

    def test_delete_missing_edge_fails(self):
        with pytest.raises(ValueError):
            path(3).delete_edge(0, 2)

    def test_components_order_and_sizes(self):
        g = path(2).disjoint_union(path(3))
        comps = g.components()
        assert [c.n for c in comps] == [2, 3]

    def test_components_of_connected_graph(self):
        comps = cycle(5).components()
        assert len(comps) == 1
        assert comps[0].edge_count == 5

    def test_disjoint_union_keeps_both_sides(self):
        g = cycle(3).disjoint_union(path(2))
        assert g.n == 5
        assert g.edge_count == 4
        assert sorted(g.neighbors(4)) == [3]

    def test_induced_relabels_in_given_order(self):
        g = path(4).induced([2, 1, 3])
        # edges 1-2 and 2-3 survive as 1-0 and 0-2
        assert sorted(g.edges()) == [(0, 1), (0, 2)]


# ----------------------------------------------------------------------
# canonical forms
# ----------------------------------------------------------------------

def shuffled_copy(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


class TestCanonicalForm:
    def test_invariant_under_relabeling(self):
        rng = random.Random(7)
        for g in [path(6), cycle(6), complete(5), star(4), cycle(9)]:
            want = canonical_form(g)
            for _ in range(10):
                assert canonical_form(shuffled_copy(g, rng)) == want

    def test_distinguishes_same_degree_sequence(self):
        # P4 and K1,3 share vertex count; C6 and two triangles share degrees
        assert canonical_form(path(4)) != canonical_form(star(3))
        two_triangles = complete(3).disjoint_union(complete(3))
        assert canonical_form(cycle(6)) != canonical_form(two_triangles)

    def test_distinguishes_random_nonisomorphic_pairs(self):
        # different edge counts on the same order are never isomorphic
        rng = random.Random(11)
        for _ in range(50):
            n = rng.randrange(4, 8)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
            rng.shuffle(edges)
            k = rng.randrange(1, len(edges))
            a = Graph.from_edges(n, edges[:k])
            b = Graph.from_edges(n, edges[: k + 1])
            assert canonical_form(a) != canonical_form(b)

    def test_too_large_guard(self):
        with pytest.raises(TooLarge):
            canonical_form(path(13), max_vertices=12)

    def test_zero_vertices(self):
        assert canonical_form(Graph.empty(0)) == b"\x00"


class TestEnumeration:
    def test_connected_counts_through_seven(self):
        reps = connected_graphs(7)
        assert [len(reps[k]) for k in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]

    def test_representatives_are_connected_and_distinct(self):
        reps = connected_graphs(5)
        for k, graphs in reps.items():
            keys = {canonical_form(g) for g in graphs}
            assert len(keys) == len(graphs)
            assert all(g.n == k and g.is_connected() for g in graphs)
