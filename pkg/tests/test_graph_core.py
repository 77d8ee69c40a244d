import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import component_count, connected_graphs, graphs, to_nx
from histree.errors import GraphError, PreconditionError
from histree.generators import gen_complete, gen_cycle, gen_figure1, gen_Gkd, gen_path
from histree.graph_core import (
    Graph,
    Multigraph,
    Tree,
    almost_balanced_orientation,
    bfs_tree,
    blocks_and_cutvertices,
    bridges,
    connected_components,
    edge_key,
    induced_subgraph,
    is_connected,
    min_two_edge_cut_component,
    shortest_path,
    spanning_tree_or_raise,
    two_edge_cuts,
)


# --- Graph ---------------------------------------------------------------

def test_graph_rejects_loops_parallel_and_bad_ids():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


@given(graphs())
def test_graph_invariants(g):
    for v in range(g.n):
        assert list(g.adj[v]) == sorted(set(g.adj[v]))
        assert v not in g.adj[v]
        for w in g.adj[v]:
            assert v in g.adj[w]
    assert sum(g.degrees) == 2 * g.m
    assert all(u < v for u, v in g.edges)


def test_edge_key_normalises():
    assert edge_key(5, 2) == (2, 5)


# --- components ----------------------------------------------------------

def test_components_examples():
    assert connected_components(Graph.from_edges(0, [])) == []
    assert [sorted(c) for c in connected_components(gen_complete(4))] == [[0, 1, 2, 3]]
    two = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert sorted(sorted(c) for c in connected_components(two)) == [[0, 1, 2], [3, 4, 5]]


@given(graphs())
def test_components_match_networkx(g):
    ours = sorted(sorted(c) for c in connected_components(g))
    theirs = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs


@given(connected_graphs(min_n=2), st.data())
def test_shortest_path_is_shortest(g, data):
    a = data.draw(st.integers(0, g.n - 1))
    b = data.draw(st.integers(0, g.n - 1))
    p = shortest_path(g, a, b)
    assert p[0] == a and p[-1] == b
    assert all(g.has_edge(u, v) for u, v in zip(p, p[1:]))
    assert len(p) - 1 == nx.shortest_path_length(to_nx(g), a, b)


# --- bridges and blocks --------------------------------------------------

def test_bridges_examples():
    path = gen_path(6)
    assert bridges(path) == frozenset(path.edges)
    assert bridges(gen_cycle(5)) == frozenset()


def test_gkd_bridges_are_the_connectors():
    g = gen_Gkd(2, 3)
    naive = {e for e in g.edges if component_count(g, [e]) > component_count(g)}
    assert len(naive) == 4
    assert bridges(g) == naive


@given(graphs(max_n=12))
def test_bridges_match_deletion_test(g):
    base = component_count(g)
    naive = {e for e in g.edges if component_count(g, [e]) > base}
    assert bridges(g) == naive


def test_block_examples():
    k4 = blocks_and_cutvertices(gen_complete(4))
    assert len(k4.blocks) == 1 and not k4.cutvertices and k4.endblock == (True,)
    bow = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    d = blocks_and_cutvertices(bow)
    assert d.cutvertices == {2}
    assert sorted(map(sorted, d.blocks)) == [[0, 1, 2], [2, 3, 4]]
    assert all(d.endblock)
    with pytest.raises(PreconditionError):
        blocks_and_cutvertices(Graph.from_edges(2, []))


def test_gkd_blocks():
    g = gen_Gkd(2, 3)
    d = blocks_and_cutvertices(g)
    sizes = sorted(len(b) for b in d.blocks)
    assert sizes == [2, 2, 2, 2, 4, 4, 4, 4, 4]
    ends = d.endblocks()
    assert len(ends) == 4 and all(len(b) == 4 for b in ends)
    # an endblock holds one cut vertex; deleting it separates the rest of the block
    for b in ends:
        (c,) = b & d.cutvertices
        comps = connected_components(g, skip_vertices=[c])
        assert any(set(comp) == set(b) - {c} for comp in comps)


@given(connected_graphs(max_n=12))
def test_blocks_match_networkx(g):
    d = blocks_and_cutvertices(g)
    h = to_nx(g)
    if g.n > 1:
        theirs = sorted(sorted(b) for b in nx.biconnected_components(h))
        assert sorted(map(sorted, d.blocks)) == theirs
        assert set(d.cutvertices) == set(nx.articulation_points(h))
    for u, v in g.edges:
        assert sum(1 for b in d.blocks if u in b and v in b) == 1
    for b1, b2 in itertools.combinations(d.blocks, 2):
        assert len(b1 & b2) <= 1


# --- 2-edge cuts ---------------------------------------------------------

def naive_two_edge_cuts(g, block):
    sub, m = induced_subgraph(g, block)
    out = []
    for e, f in itertools.combinations(sub.edges, 2):
        if component_count(sub, [e, f]) > 1:
            out.append(tuple(sorted((edge_key(m.old(e[0]), m.old(e[1])),
                                     edge_key(m.old(f[0]), m.old(f[1]))))))
    return sorted(out)


@given(connected_graphs(min_n=3, max_n=11))
def test_two_edge_cuts_match_pair_scan(g):
    for b in blocks_and_cutvertices(g).blocks:
        if len(b) >= 3:
            assert two_edge_cuts(g, b) == naive_two_edge_cuts(g, b)


def test_min_cut_examples():
    assert min_two_edge_cut_component(gen_complete(4), range(4)) is None
    fig = gen_figure1()
    r = min_two_edge_cut_component(fig, range(16))
    assert r.component == frozenset({0, 1, 2, 3})
    assert set(r.cut_edges) == {(0, 15), (3, 4)}
    c6 = min_two_edge_cut_component(gen_cycle(6), range(6))
    assert len(c6.component) == 1 and c6.component == frozenset({0})


@given(connected_graphs(min_n=3, max_n=11))
def test_cut_result_properties(g):
    for b in blocks_and_cutvertices(g).blocks:
        r = min_two_edge_cut_component(g, b)
        if r is None:
            assert not naive_two_edge_cuts(g, b)
            continue
        sub, m = induced_subgraph(g, b)
        cut = m.new_edges(r.cut_edges)
        assert component_count(sub, cut) >= 2
        inner, mm = induced_subgraph(g, r.component)
        assert is_connected(inner)
        smallest = min(min(len(s), len(b) - len(s)) for s in
                       (_side(g, b, c) for c in naive_two_edge_cuts(g, b)))
        assert len(r.component) == smallest


def _side(g, block, cut):
    sub, m = induced_subgraph(g, block)
    comps = connected_components(sub, skip_edges=m.new_edges(cut))
    return comps[0]


# --- orientations --------------------------------------------------------

def test_orientation_examples():
    single = almost_balanced_orientation(Multigraph((10, 20), ((0, 1, "e"),)))
    assert sorted((single.in_degree(i), single.out_degree(i)) for i in range(2)) == [(0, 1), (1, 0)]
    c4 = almost_balanced_orientation(Multigraph((0, 1, 2, 3), tuple((i, (i + 1) % 4, i) for i in range(4))))
    assert all(c4.in_degree(i) == 1 == c4.out_degree(i) for i in range(4))
    star = almost_balanced_orientation(Multigraph((0, 1, 2, 3), ((0, 1, "a"), (0, 2, "b"), (0, 3, "c"))))
    assert star.in_degree(0) in (1, 2)
    assert abs(star.in_degree(0) - star.out_degree(0)) == 1


@given(st.integers(1, 6).flatmap(
    lambda k: st.tuples(st.just(k), st.lists(st.tuples(st.integers(0, k - 1), st.integers(0, k - 1)),
                                             max_size=15))))
def test_orientation_is_almost_balanced(data):
    k, pairs = data
    mg = Multigraph(tuple(range(k)), tuple((a, b, i) for i, (a, b) in enumerate(pairs)))
    o = almost_balanced_orientation(mg)
    assert len(o.direction) == len(pairs)
    for (a, b, _), (t, h) in zip(mg.edges, o.direction):
        assert {t, h} == {a, b}
    assert sum(o.in_degree(i) for i in range(k)) == len(pairs)
    assert sum(o.out_degree(i) for i in range(k)) == len(pairs)
    for i in range(k):
        diff = abs(o.in_degree(i) - o.out_degree(i))
        assert diff == mg.degree(i) % 2


def test_multigraph_rejects_duplicate_tags():
    with pytest.raises(GraphError):
        Multigraph((0, 1), ((0, 1, "t"), (0, 1, "t")))


# --- induced subgraphs and trees -----------------------------------------

def test_induced_subgraph_examples():
    k3, m = induced_subgraph(gen_complete(4), [0, 2, 3])
    assert k3.m == 3 and m.old(1) == 2 and m.new(3) == 2
    c5 = gen_cycle(5)
    same, ident = induced_subgraph(c5, range(5))
    assert same == c5 and all(ident.old(v) == v for v in range(5))
    p3, _ = induced_subgraph(c5, [1, 2, 3])
    assert p3.edges == ((0, 1), (1, 2))
    with pytest.raises(GraphError):
        induced_subgraph(c5, [7])


def test_tree_validation():
    k4 = gen_complete(4)
    t = spanning_tree_or_raise(k4, [(0, 1), (0, 2), (0, 3)])
    assert t.degree(0) == 3 and t.neighbors(0) == [1, 2, 3]
    with pytest.raises(GraphError):
        Tree(k4, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(GraphError):
        Tree(k4, [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        spanning_tree_or_raise(k4, [(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        Tree(gen_cycle(5), [(0, 2)])


@given(connected_graphs())
def test_bfs_tree_spans(g):
    t = bfs_tree(g)
    assert t.is_spanning
    if g.n > 1:
        assert nx.is_tree(nx.Graph(list(t.edges)))
