import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import to_nx
from histree.certificates import verify_w_configuration
from histree.errors import PreconditionError
from histree.generators import (
    FAMILIES,
    GenSpec,
    gen_Gkd,
    gen_case_fixture,
    gen_cube,
    gen_double_star,
    gen_figure1,
    gen_pendant_triangle,
    gen_petersen,
    gen_random_3ec,
    gen_random_connected,
    gen_random_cubic,
    gen_random_gadget_host,
    gen_random_min_degree,
    gen_random_star_graph,
    gen_theta,
    gen_w_tree,
    gen_wa_config,
    gen_wab_config,
    generate,
    is_three_edge_connected,
    is_triangle_free,
)
from histree.graph_core import is_connected, two_edge_cuts


def test_figure1_shape():
    g = gen_figure1()
    assert g.n == 16 and g.m == 24
    assert all(g.degree(v) == 3 for v in range(16))
    # each diamond holds exactly one 4-cycle through both of its triangles
    four = [c for c in nx.simple_cycles(to_nx(g), length_bound=4) if len(c) == 4]
    assert len(four) == 4
    connectors = [tuple(sorted((4 * i + 3, (4 * i + 4) % 16))) for i in range(4)]
    for e in connectors:
        assert is_connected(g, skip_edges=[e])
    cuts = two_edge_cuts(g, range(16))
    assert {frozenset(c) for c in cuts} >= {frozenset(p) for p in itertools.combinations(connectors, 2)}


@pytest.mark.parametrize("k,d", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)])
def test_gkd_counts(k, d):
    g = gen_Gkd(k, d)
    assert g.n == (d + 1) * (d + 2) ** (k - 1)
    assert g.min_degree() >= d
    assert is_connected(g)
    # K_{d+1} blocks joined by bridges
    nb = sum(1 for b in nx.biconnected_components(to_nx(g)) if len(b) > 2)
    assert nb == (d + 2) ** (k - 1) if k > 1 else nb == 1


def test_gkd_rejects_bad_params():
    with pytest.raises(PreconditionError):
        gen_Gkd(0, 3)
    with pytest.raises(PreconditionError):
        gen_Gkd(2, 1)


@pytest.mark.parametrize("m", [6, 7, 10])
def test_double_star(m):
    g, cover = gen_double_star(m)
    assert g.n == 2 * m + 2
    assert nx.is_bipartite(to_nx(g))
    assert cover.validate(g, 6)
    assert g.degree(0) == m and g.degree(m + 1) == m
    assert all(g.degree(v) == 3 for v in range(g.n) if v not in (0, m + 1))
    with pytest.raises(PreconditionError):
        gen_double_star(5)


@given(st.integers(1, 6))
def test_wa_config(a):
    g, cfg = gen_wa_config(a)
    assert verify_w_configuration(g, cfg)
    assert g.degree(cfg.centre) == a + 2
    assert all(g.degree(v) == 3 for v in (*cfg.connectors, *cfg.path_p))


@given(st.integers(1, 5), st.integers(1, 5))
def test_wab_config(a, b):
    if a + b < 3:
        return
    g, cfg = gen_wab_config(a, b)
    assert verify_w_configuration(g, cfg)
    assert g.degree(cfg.centre) == a + b
    assert all(g.degree(v) == 3 for v in (*cfg.connectors, *cfg.path_p, *cfg.path_q))


@pytest.mark.parametrize("name", ["3.2", "3.3.2", "3.3.2.1"])
def test_case_fixtures_are_valid(name):
    g, cfg = gen_case_fixture(name)
    assert verify_w_configuration(g, cfg)
    assert g.min_degree() >= 3
    with pytest.raises(PreconditionError):
        gen_case_fixture("nope")


@given(st.lists(st.one_of(st.tuples(st.just("wa"), st.integers(1, 4)),
                          st.tuples(st.just("wab"), st.integers(1, 3), st.integers(2, 3))),
                min_size=3, max_size=5))
def test_w_tree_properties(confs):
    wt = gen_w_tree(confs)
    g = wt.graph
    assert is_connected(g) and g.min_degree() >= 3
    for cfg in wt.configs:
        assert verify_w_configuration(g, cfg)
    # outside the skeleton, every non-centre vertex has degree 3
    sk_n = 1 + len(confs)
    centres = set(wt.centres())
    assert all(g.degree(v) == 3 for v in range(sk_n, g.n) if v not in centres)
    assert wt.s_set() >= centres


def test_w_tree_rejects_bad_skeleton():
    with pytest.raises(PreconditionError):
        gen_w_tree([("wa", 1), ("wa", 1)], skeleton=[(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        gen_w_tree([("wa", 1)] * 2)
    with pytest.raises(PreconditionError):
        gen_w_tree([("wab", 1, 1)] * 3)


@given(st.integers(2, 40), st.integers(0, 30), st.integers(0, 10**6))
def test_random_connected(n, extra, seed):
    g = gen_random_connected(n, extra, seed)
    assert is_connected(g)
    assert g.m == min(n - 1 + extra, n * (n - 1) // 2)
    assert g == gen_random_connected(n, extra, seed)


@given(st.integers(5, 40), st.integers(1, 4), st.integers(0, 10**6))
def test_random_min_degree(n, d, seed):
    g = gen_random_min_degree(n, d, seed)
    assert is_connected(g) and g.min_degree() >= d
    assert g == gen_random_min_degree(n, d, seed)


@given(st.integers(2, 15).map(lambda k: 2 * k), st.integers(0, 10**6))
def test_random_cubic(n, seed):
    g = gen_random_cubic(n, seed)
    assert is_connected(g) and all(g.degree(v) == 3 for v in range(n))


@pytest.mark.parametrize("seed", range(5))
def test_random_3ec(seed):
    g = gen_random_3ec(12, seed)
    assert nx.edge_connectivity(to_nx(g)) >= 3
    assert is_three_edge_connected(g)
    assert not is_three_edge_connected(gen_figure1())


@given(st.integers(2, 5), st.integers(3, 8), st.integers(0, 1000))
def test_random_star_graph(k, size, seed):
    g, cover = gen_random_star_graph(k, size, seed)
    assert cover.validate(g, size)
    assert is_connected(g) and is_triangle_free(g)
    assert g.min_degree() >= 3 or size < 3


def test_random_gadget_host():
    g, v = gen_random_gadget_host(10, 5, 77)
    assert g.degree(v) == 5 and is_connected(g)
    assert g.min_degree() >= 3
    with pytest.raises(PreconditionError):
        gen_random_gadget_host(8, 4, 0)


def test_pendant_triangle():
    g = gen_pendant_triangle(4)
    assert g.n == 11 and g.degree(0) == 2
    assert g.has_edge(1, 2) and g.degree(1) == 3 and g.degree(2) == 3
    assert not is_triangle_free(g)
    assert is_triangle_free(gen_cube(3)) and is_triangle_free(gen_petersen())


@pytest.mark.parametrize("fam,params", [
    ("figure1", {}), ("gkd", {"k": 2, "d": 3}), ("double-star", {"m": 6}), ("wa", {"a": 2}),
    ("wab", {"a": 1, "b": 2}), ("case-fixture", {"name": "3.2"}), ("w-tree", {}),
    ("random-min-degree", {"n": 12, "d": 3}), ("random-connected", {"n": 9, "extra": 3}),
    ("random-cubic", {"n": 10}), ("random-3ec", {"n": 10}), ("star-graph", {"k": 2, "m": 6}),
    ("pendant-triangle", {}), ("petersen", {}), ("cube", {}), ("complete", {"n": 5}),
    ("cycle", {"n": 5}), ("path", {"n": 4}), ("complete-bipartite", {"a": 2, "b": 3}),
    ("wheel", {"k": 5}), ("theta", {}),
])
def test_registry(fam, params):
    a = generate(GenSpec(fam, params, seed=3))
    b = generate(GenSpec(fam, params, seed=3))
    assert a == b and a.graph.n > 0
    assert fam in FAMILIES


def test_registry_errors():
    with pytest.raises(PreconditionError, match="unknown family"):
        generate(GenSpec("nope"))
    with pytest.raises(PreconditionError, match="missing parameter"):
        generate(GenSpec("gkd", {"k": 2}))
    with pytest.raises(PreconditionError):
        gen_theta(2, 1)
