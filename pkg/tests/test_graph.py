import pytest
from hypothesis import given, strategies as st

from hcpsolve.graph import (
    GraphError,
    UnionFind,
    bipartition,
    build_graph,
    components,
    has_articulation_point,
    is_connected,
)

from conftest import complete_graph, cycle_graph, path_graph


def test_build_graph_canonical_edges():
    g = build_graph([(2, 0), (1, 0), (2, 1)], 3)
    assert g.edges == [(0, 1), (0, 2), (1, 2)]
    assert g.m == 3
    assert g.adj[0] == (1, 2)
    assert g.has_edge(2, 0) and g.has_edge_sorted(0, 2)
    assert not build_graph([(0, 1)], 3).has_edge(1, 2)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)], [(-1, 0)]])
def test_build_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphError):
        build_graph(edges, 3)


def test_duplicates_rejected_unless_deduped():
    with pytest.raises(GraphError):
        build_graph([(0, 1), (1, 0)], 2)
    assert build_graph([(0, 1), (1, 0)], 2, dedupe=True).m == 1


def test_subgraph_relabels():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)], 4)
    sub, old = g.subgraph([3, 1, 2])
    assert old == [3, 1, 2]
    # new labels follow the given order: 3->0, 1->1, 2->2
    assert sub.edges == [(0, 2), (1, 2)]


def test_graph_equality_and_hash():
    a = build_graph([(0, 1), (1, 2)], 3)
    b = build_graph([(2, 1), (1, 0)], 3)
    assert a == b and hash(a) == hash(b)
    assert a != build_graph([(0, 1)], 3)


def test_union_find():
    uf = UnionFind(4)
    assert uf.union(0, 1)
    assert not uf.union(1, 0)
    assert uf.union(2, 3)
    assert not uf.connected(0, 3)
    assert uf.union(1, 3)
    assert uf.connected(0, 2)
    assert uf.make_set() == 4
    assert len(uf) == 5
    with pytest.raises(IndexError):
        uf.find(9)


def test_components_and_connectivity():
    g = build_graph([(0, 3), (1, 4)], 5)
    assert components(g) == [[0, 3], [1, 4], [2]]
    assert not is_connected(g)
    assert is_connected(path_graph(5))


def test_bipartition():
    left, right = bipartition(path_graph(5))
    assert sorted(left) == [0, 2, 4] and sorted(right) == [1, 3]
    assert bipartition(cycle_graph(5)) is None


def test_articulation_points():
    assert has_articulation_point(path_graph(3))
    assert not has_articulation_point(cycle_graph(6))
    assert not has_articulation_point(complete_graph(4))
    # two triangles sharing vertex 2
    bowtie = build_graph([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)], 5)
    assert has_articulation_point(bowtie)


@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=40))
def test_components_match_union_find(pairs):
    edges = {(min(a, b), max(a, b)) for a, b in pairs if a != b}
    g = build_graph(sorted(edges), 10)
    uf = UnionFind(10)
    for u, v in edges:
        uf.union(u, v)
    comps = components(g)
    assert sorted(v for c in comps for v in c) == list(range(10))
    for c in comps:
        assert all(uf.connected(c[0], v) for v in c)
    assert len(comps) == len({uf.find(v) for v in range(10)})
