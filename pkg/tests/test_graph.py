import itertools

from hypothesis import given, settings

from bkvpg.graph import build_graph, build_point_index, edge_list_text, graph_from_instance
from bkvpg.grid import grid_points, make_instance

from conftest import small_instances


def brute_force_edges(instance):
    """Adjacency straight from pairwise point-set comparison, no index involved."""
    pts = {p.id: list(grid_points(p)) for p in instance.paths}
    edges = set()
    for a, b in itertools.combinations(sorted(pts), 2):
        if any(s == t for s in pts[a] for t in pts[b]):
            edges.add((a, b))
    return edges


class TestPointIndex:
    def test_crossing_at_one_point(self):
        inst = make_instance(1, [(1, [(0, 1), (2, 1)]), (1, [(1, 0), (1, 2)])])
        idx = build_point_index(inst)
        assert idx[(1, 1)] == (0, 1)
        assert all(len(v) == 1 for t, v in idx.paths_at.items() if t != (1, 1))

    def test_disjoint(self):
        inst = make_instance(0, [(1, [(0, 0), (3, 0)]), (1, [(0, 2), (3, 2)])])
        idx = build_point_index(inst)
        assert all(len(v) == 1 for v in idx.paths_at.values())
        assert len(idx) == 8

    def test_identical_paths(self):
        verts = [(0, 0), (2, 0), (2, 2)]
        inst = make_instance(1, [(1, verts), (2, verts)])
        idx = build_point_index(inst)
        assert all(v == (0, 1) for v in idx.paths_at.values())
        assert build_graph(idx).adjacency == {0: (1,), 1: (0,)}

    @given(small_instances())
    def test_index_matches_grid_points(self, inst):
        idx = build_point_index(inst)
        by_id = inst.by_id()
        assert set(idx.paths_at) == set().union(*(grid_points(p) for p in inst.paths))
        for t, members in idx.paths_at.items():
            assert list(members) == sorted(members)
            assert set(members) == {pid for pid, p in by_id.items() if t in grid_points(p)}
        assert idx.incidences() == sum(len(grid_points(p)) for p in inst.paths)
        assert idx.incidences() <= inst.bound * inst.n


class TestGraph:
    def test_touching_endpoints_are_adjacent(self):
        inst = make_instance(1, [(1, [(0, 0), (2, 0)]), (1, [(2, 0), (2, 2)])])
        assert graph_from_instance(inst).edges() == [(0, 1)]

    def test_parallel_not_adjacent(self):
        inst = make_instance(0, [(1, [(0, 0), (2, 0)]), (1, [(0, 1), (2, 1)])])
        assert graph_from_instance(inst).edges() == []

    def test_triangle_at_one_point(self):
        inst = make_instance(1, [
            (1, [(5, 5)]),
            (1, [(3, 5), (7, 5)]),
            (1, [(5, 2), (5, 5), (6, 5)]),
        ])
        assert graph_from_instance(inst).edges() == [(0, 1), (0, 2), (1, 2)]

    def test_closed_neighborhood_contains_self(self, cycle5):
        g = graph_from_instance(cycle5)
        for u in g.nodes:
            assert u in g.closed_neighborhood(u)
        assert g.closed_neighborhood(0) == (0, 1, 4)

    def test_edge_list_text(self, cycle5):
        text = edge_list_text(graph_from_instance(cycle5))
        assert text == "0 1\n0 4\n1 2\n2 3\n3 4\n"

    def test_is_independent(self, cycle5):
        g = graph_from_instance(cycle5)
        assert g.is_independent([0, 2])
        assert not g.is_independent([0, 1])
        assert not g.is_independent([0, 0])

    @settings(max_examples=200)
    @given(small_instances(n_max=12))
    def test_matches_brute_force(self, inst):
        g = graph_from_instance(inst)
        assert set(g.edges()) == brute_force_edges(inst)

    @given(small_instances())
    def test_symmetric_irreflexive(self, inst):
        g = graph_from_instance(inst)
        for u in g.nodes:
            assert u not in g.neighbors(u)
            for v in g.neighbors(u):
                assert u in g.neighbors(v)

    @given(small_instances())
    def test_point_sets_are_cliques(self, inst):
        idx = build_point_index(inst)
        g = build_graph(idx)
        for members in idx.paths_at.values():
            for a, b in itertools.combinations(members, 2):
                assert g.adjacent(a, b)
