"""Named graphs and parameterised families.

Every generator is deterministic; the random families take an explicit seed
and use their own ``random.Random`` instance.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .certificates import WConfig
from .errors import GraphError, PreconditionError
from .graph_core import Graph, bridges, is_connected, two_edge_cuts
from .structure_search import StarCover


@dataclass(frozen=True)
class GenSpec:
    """A family name plus integer parameters (and a seed for random families)."""

    family: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None


# ---------------------------------------------------------------------------
# small named graphs
# ---------------------------------------------------------------------------

def gen_complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def gen_cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def gen_path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def gen_star(k: int) -> Graph:
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def gen_complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def gen_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def gen_cube(d: int = 3) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d)
                                if v < v ^ (1 << i)])


def gen_wheel(k: int) -> Graph:
    """Hub 0 joined to every vertex of the cycle 1..k."""
    rim = [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    return Graph.from_edges(k + 1, rim + [(0, i) for i in range(1, k + 1)])


def gen_theta(k: int = 3, length: int = 2) -> Graph:
    """Two poles 0 and 1 joined by ``k`` internally disjoint paths of ``length`` edges."""
    if k < 1 or length < 1:
        raise PreconditionError("theta needs k >= 1 and length >= 1")
    if length == 1 and k > 1:
        raise PreconditionError("only one path may be a direct edge")
    edges = []
    nxt = 2
    for _ in range(k):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(nxt, edges)


# ---------------------------------------------------------------------------
# families from the constructions
# ---------------------------------------------------------------------------

def gen_figure1() -> Graph:
    """Cubic ring of four diamonds (K4 minus an edge).

    Diamond ``i`` occupies ``4i..4i+3``; ``4i`` and ``4i+3`` are its two
    degree-2 vertices and ``4i+3`` is joined to ``4(i+1) mod 16``.
    """
    edges = []
    for i in range(4):
        a, b, c, d = 4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3
        edges += [(a, b), (a, c), (b, c), (b, d), (c, d)]
        edges.append((d, (4 * i + 4) % 16))
    return Graph.from_edges(16, edges)


def gen_Gkd(k: int, d: int) -> Graph:
    """Every spanning tree has vertices of every degree 1..k; min degree >= d.

    Level 1 is K_{d+1}. Level k hangs a fresh K_{d+1} off every vertex of
    level k-1 by a single edge to its first vertex.
    """
    if k < 1 or d < 2:
        raise PreconditionError("gen_Gkd needs k >= 1 and d >= 2")
    n = d + 1
    edges = list(itertools.combinations(range(n), 2))
    for _ in range(k - 1):
        base = n
        for v in range(n):
            first = base + v * (d + 1)
            block = range(first, first + d + 1)
            edges += list(itertools.combinations(block, 2))
            edges.append((v, first))
        n = base * (d + 2)
    return Graph.from_edges(n, edges)


def gen_double_star(m: int) -> tuple[Graph, StarCover]:
    """Two stars with ``m`` leaves each, leaf i of A joined to leaves i, i+1 of B.

    Vertex 0 is A's centre, 1..m its leaves, m+1 is B's centre and
    m+2..2m+1 its leaves. Bipartite, every leaf has degree 3.
    """
    if m < 6:
        raise PreconditionError("gen_double_star needs m >= 6")
    a_leaf = list(range(1, m + 1))
    b_centre = m + 1
    b_leaf = list(range(m + 2, 2 * m + 2))
    edges = [(0, u) for u in a_leaf] + [(b_centre, u) for u in b_leaf]
    for i in range(m):
        edges.append((a_leaf[i], b_leaf[i]))
        edges.append((a_leaf[i], b_leaf[(i + 1) % m]))
    cover = StarCover(((0, frozenset(a_leaf)), (b_centre, frozenset(b_leaf))))
    return Graph.from_edges(2 * m + 2, edges), cover


def _gadget_edges(kind: str, a: int, b: int, base: int):
    """Edges of a W gadget on ids starting at ``base`` plus its WConfig."""
    v, x, y = base, base + 1, base + 2
    p = list(range(base + 3, base + 3 + a))
    q = list(range(base + 3 + a, base + 3 + a + b)) if kind == "Wab" else []
    edges = [(v, u) for u in p + q]
    edges += list(zip(p, p[1:])) + list(zip(q, q[1:]))
    edges += [(x, p[0]), (y, p[-1])]
    if kind == "Wa":
        edges += [(v, x), (v, y)]
        cfg = WConfig("Wa", v, (x, y), tuple(p))
    else:
        edges += [(x, q[0]), (y, q[-1])]
        cfg = WConfig("Wab", v, (x, y), tuple(p), tuple(q))
    size = 3 + a + b if kind == "Wab" else 3 + a
    return edges, cfg, size


def _with_stub(kind: str, a: int, b: int, stub_size: int) -> tuple[Graph, WConfig]:
    edges, cfg, size = _gadget_edges(kind, a, b, 0)
    stub = list(range(size, size + stub_size))
    edges += list(itertools.combinations(stub, 2))
    x, y = cfg.connectors
    edges += [(x, stub[0]), (y, stub[1])]
    return Graph.from_edges(size + stub_size, edges), cfg


def gen_wa_config(a: int, stub_size: int = 4) -> tuple[Graph, WConfig]:
    """W_a gadget (centre 0, connectors 1, 2) wired to a complete stub."""
    if a < 1 or stub_size < 4:
        raise PreconditionError("gen_wa_config needs a >= 1 and stub_size >= 4")
    return _with_stub("Wa", a, 0, stub_size)


def gen_wab_config(a: int, b: int, stub_size: int = 4) -> tuple[Graph, WConfig]:
    """W_{a,b} gadget (centre 0, connectors 1, 2) wired to a complete stub."""
    if a < 1 or b < 1 or stub_size < 4:
        raise PreconditionError("gen_wab_config needs a, b >= 1 and stub_size >= 4")
    return _with_stub("Wab", a, b, stub_size)


CASE_FIXTURES = {
    "3.2": ("Wa", 2, 0),
    "3.3.2": ("Wab", 1, 2),
    "3.3.2.1": ("Wab", 2, 2),
}


def gen_case_fixture(name: str) -> tuple[Graph, WConfig]:
    """A gadget wired to a complete stub larger than itself, so the gadget is
    the smallest side of any 2-edge cut."""
    if name not in CASE_FIXTURES:
        raise PreconditionError(f"unknown case fixture {name!r}; known: {sorted(CASE_FIXTURES)}")
    kind, a, b = CASE_FIXTURES[name]
    size = 3 + a + b
    return _with_stub(kind, a, b, max(5, size + 1))


def _parse_config(spec) -> tuple[str, int, int]:
    if isinstance(spec, GenSpec):
        fam, p = spec.family.lower(), spec.params
        if fam == "wa":
            return "Wa", int(p["a"]), 0
        if fam == "wab":
            return "Wab", int(p["a"]), int(p["b"])
        raise PreconditionError(f"leaf config must be wa or wab, got {spec.family!r}")
    kind, *nums = spec
    kind = {"wa": "Wa", "wab": "Wab"}.get(str(kind).lower(), kind)
    if kind == "Wa" and len(nums) == 1:
        return "Wa", int(nums[0]), 0
    if kind == "Wab" and len(nums) == 2:
        return "Wab", int(nums[0]), int(nums[1])
    raise PreconditionError(f"bad leaf config {spec!r}")


@dataclass(frozen=True)
class WTree:
    graph: Graph
    configs: tuple[WConfig, ...]
    skeleton_leaves: tuple[int, ...]

    def centres(self) -> list[int]:
        return [c.centre for c in self.configs]

    def s_set(self) -> frozenset[int]:
        heavy = {v for v in range(self.graph.n) if self.graph.degree(v) >= 4}
        return frozenset(heavy | set(self.centres()))


def gen_w_tree(leaf_configs: Sequence, skeleton: Optional[Sequence[tuple[int, int]]] = None) -> WTree:
    """Hang a W_a / W_{a,b} gadget off every leaf of a skeleton tree, both
    connectors joined to that leaf.

    ``leaf_configs`` holds GenSpecs (family ``wa``/``wab``) or tuples like
    ``("wa", 2)`` / ``("wab", 1, 2)``, one per skeleton leaf in increasing id
    order. The default skeleton is the star K_{1,k}.
    """
    confs = [_parse_config(c) for c in leaf_configs]
    if skeleton is None:
        k = len(confs)
        skeleton = [(0, i) for i in range(1, k + 1)]
    sk_n = 1 + max(max(e) for e in skeleton)
    sk = Graph.from_edges(sk_n, skeleton)
    if sk.m != sk_n - 1 or not is_connected(sk):
        raise PreconditionError("skeleton must be a tree")
    if any(sk.degree(v) == 2 for v in range(sk_n)):
        raise PreconditionError("skeleton must have no vertex of degree 2")
    leaves = [v for v in range(sk_n) if sk.degree(v) == 1]
    if len(leaves) != len(confs):
        raise PreconditionError(f"skeleton has {len(leaves)} leaves but {len(confs)} configs")
    for kind, a, b in confs:
        if a < 1 or (kind == "Wab" and b < 1) or (kind == "Wab" and a + b < 3):
            raise PreconditionError("W_{a,b} leaves need a, b >= 1 and a + b >= 3")
    edges = list(sk.edges)
    out = []
    base = sk_n
    for t, (kind, a, b) in zip(leaves, confs):
        ge, cfg, size = _gadget_edges(kind, a, b, base)
        edges += ge
        x, y = cfg.connectors
        edges += [(x, t), (y, t)]
        out.append(cfg)
        base += size
    return WTree(Graph.from_edges(base, edges), tuple(out), tuple(leaves))


# ---------------------------------------------------------------------------
# random families
# ---------------------------------------------------------------------------

def _random_tree_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[rng.randrange(i)]) for i in range(1, n)]


def gen_random_connected(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus ``extra_edges`` distinct random extra edges."""
    if n < 1:
        raise PreconditionError("n must be positive")
    rng = random.Random(seed)
    edges = {tuple(sorted(e)) for e in _random_tree_edges(n, rng)}
    room = n * (n - 1) // 2 - len(edges)
    want = min(extra_edges, room)
    while want > 0:
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e not in edges:
            edges.add(e)
            want -= 1
    return Graph.from_edges(n, sorted(edges))


def gen_random_min_degree(n: int, d: int, seed: int, extra_edges: int = 0) -> Graph:
    """Connected simple graph with minimum degree at least ``d``.

    A random spanning tree is topped up by joining each deficient vertex to
    random non-neighbours, then ``extra_edges`` random edges are added.
    """
    if not n > d >= 1:
        raise PreconditionError("gen_random_min_degree needs n > d >= 1")
    rng = random.Random(seed)
    nbrs = [set() for _ in range(n)]
    for u, v in _random_tree_edges(n, rng):
        nbrs[u].add(v)
        nbrs[v].add(u)
    for v in rng.sample(range(n), n):
        while len(nbrs[v]) < d:
            choices = [w for w in range(n) if w != v and w not in nbrs[v]]
            low = [w for w in choices if len(nbrs[w]) < d]
            w = rng.choice(low or choices)
            nbrs[v].add(w)
            nbrs[w].add(v)
    for _ in range(extra_edges):
        u, v = rng.sample(range(n), 2)
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in nbrs[u] if u < v])


def gen_random_cubic(n: int, seed: int, max_tries: int = 1000) -> Graph:
    """Connected cubic graph from the configuration model, retried until simple."""
    if n < 4 or n % 2:
        raise PreconditionError("cubic graphs need an even n >= 4")
    rng = random.Random(seed)
    for _ in range(max_tries):
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if any(u == v for u, v in pairs):
            continue
        es = {(min(u, v), max(u, v)) for u, v in pairs}
        if len(es) != len(pairs):
            continue
        g = Graph.from_edges(n, sorted(es))
        if is_connected(g):
            return g
    raise GraphError("failed to sample a simple connected cubic graph")


def is_three_edge_connected(g: Graph) -> bool:
    if g.n < 2 or not is_connected(g) or bridges(g):
        return False
    return not two_edge_cuts(g, range(g.n))


def gen_random_3ec(n: int, seed: int, extra_edges: int = 0, max_tries: int = 1000) -> Graph:
    """3-edge-connected graph: min-degree-3 samples retried until no 1- or 2-edge cut."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = gen_random_min_degree(n, 3, rng.getrandbits(63), extra_edges)
        if is_three_edge_connected(g):
            return g
    raise GraphError("failed to sample a 3-edge-connected graph")


def gen_random_gadget_host(k: int, centre_degree: int, seed: int,
                           max_tries: int = 2000) -> tuple[Graph, int]:
    """Random gadget wired to a complete stub, returned with its centre.

    The gadget has ``k`` vertices: centre 0 of degree ``centre_degree``,
    connectors 1 and 2 with one stub neighbour each, and every other vertex of
    degree 3. The stub is larger than the gadget so that the gadget tends to
    be the smallest side of a 2-edge cut.
    """
    if k < 5 or centre_degree < 3:
        raise PreconditionError("gadget needs k >= 5 and centre_degree >= 3")
    rng = random.Random(seed)
    want = [centre_degree, 2, 2] + [3] * (k - 3)
    if sum(want) % 2:
        raise PreconditionError("degree sum inside the gadget must be even")
    for _ in range(max_tries):
        points = [v for v, d in enumerate(want) for _ in range(d)]
        rng.shuffle(points)
        pairs = list(zip(points[::2], points[1::2]))
        if any(u == v for u, v in pairs):
            continue
        es = {(min(u, v), max(u, v)) for u, v in pairs}
        if len(es) != len(pairs):
            continue
        inner = Graph.from_edges(k, sorted(es))
        if not is_connected(inner) or bridges(inner):
            continue
        stub = list(range(k, 2 * k + 1))
        edges = sorted(es) + list(itertools.combinations(stub, 2)) + [(1, stub[0]), (2, stub[1])]
        return Graph.from_edges(2 * k + 1, edges), 0
    raise GraphError("failed to sample a gadget")


def gen_pendant_triangle(k: int = 4) -> Graph:
    """Two copies of K_k joined through a triangle ``v x y`` whose apex ``v``
    (vertex 0) has degree 2; ``x`` = 1 and ``y`` = 2 each have one edge into
    their own clique."""
    if k < 4:
        raise PreconditionError("gen_pendant_triangle needs k >= 4")
    a = list(range(3, 3 + k))
    b = list(range(3 + k, 3 + 2 * k))
    edges = [(0, 1), (0, 2), (1, 2), (1, a[0]), (2, b[0])]
    edges += list(itertools.combinations(a, 2)) + list(itertools.combinations(b, 2))
    return Graph.from_edges(3 + 2 * k, edges)


def gen_random_star_graph(num_stars: int, size: int, seed: int,
                          max_tries: int = 1000) -> tuple[Graph, StarCover]:
    """Triangle-free graph of minimum degree 3 built around a star cover.

    ``num_stars`` stars with ``size`` leaves each; every leaf gets two edges to
    leaves of other stars, chosen at random without closing a triangle, and
    the result is retried until connected.
    """
    if num_stars < 2 or size < 1:
        raise PreconditionError("gen_random_star_graph needs num_stars >= 2, size >= 1")
    rng = random.Random(seed)
    width = size + 1
    n = num_stars * width
    star = [v // width for v in range(n)]
    leaves = [v for v in range(n) if v % width]
    base = [(s * width, s * width + i) for s in range(num_stars) for i in range(1, width)]
    for _ in range(max_tries):
        nbrs = [set() for _ in range(n)]
        for u, v in base:
            nbrs[u].add(v)
            nbrs[v].add(u)
        ok = True
        for u in rng.sample(leaves, len(leaves)):
            while len(nbrs[u]) < 3:
                cand = [w for w in leaves if star[w] != star[u] and w not in nbrs[u]
                        and not nbrs[u] & nbrs[w]]
                if not cand:
                    ok = False
                    break
                w = rng.choice(cand)
                nbrs[u].add(w)
                nbrs[w].add(u)
            if not ok:
                break
        if not ok:
            continue
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in nbrs[u] if u < v])
        if is_connected(g):
            cover = StarCover(tuple((s * width, frozenset(range(s * width + 1, (s + 1) * width)))
                                    for s in range(num_stars)))
            return g, cover
    raise GraphError("failed to sample a star graph")


def is_triangle_free(g: Graph) -> bool:
    for u, v in g.edges:
        if g.neighbor_set(u) & g.neighbor_set(v):
            return False
    return True


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Generated:
    graph: Graph
    cover: Optional[StarCover] = None
    centres: tuple[int, ...] = ()
    config: Optional[WConfig] = None


def _need(params: dict, *names):
    missing = [k for k in names if params.get(k) is None]
    if missing:
        raise PreconditionError(f"missing parameter(s): {', '.join(missing)}")
    return [int(params[k]) for k in names]


def generate(spec: GenSpec) -> Generated:
    """Build the family named by ``spec``."""
    fam = spec.family.lower()
    p = dict(spec.params)
    seed = 0 if spec.seed is None else spec.seed
    if fam == "figure1":
        return Generated(gen_figure1())
    if fam == "gkd":
        k, d = _need(p, "k", "d")
        return Generated(gen_Gkd(k, d))
    if fam == "double-star":
        (m,) = _need(p, "m")
        g, cover = gen_double_star(m)
        return Generated(g, cover=cover)
    if fam == "wa":
        (a,) = _need(p, "a")
        g, cfg = gen_wa_config(a)
        return Generated(g, centres=(cfg.centre,), config=cfg)
    if fam == "wab":
        a, b = _need(p, "a", "b")
        g, cfg = gen_wab_config(a, b)
        return Generated(g, centres=(cfg.centre,), config=cfg)
    if fam == "case-fixture":
        g, cfg = gen_case_fixture(str(p.get("name")))
        return Generated(g, centres=(cfg.centre,), config=cfg)
    if fam == "w-tree":
        confs = p.get("configs") or [("wa", 1), ("wa", 2), ("wab", 1, 2)]
        wt = gen_w_tree(confs)
        return Generated(wt.graph, centres=tuple(wt.centres()))
    if fam == "random-min-degree":
        n, d = _need(p, "n", "d")
        return Generated(gen_random_min_degree(n, d, seed, int(p.get("extra", 0) or 0)))
    if fam == "random-connected":
        (n,) = _need(p, "n")
        return Generated(gen_random_connected(n, int(p.get("extra", 0) or 0), seed))
    if fam == "random-cubic":
        (n,) = _need(p, "n")
        return Generated(gen_random_cubic(n, seed))
    if fam == "random-3ec":
        (n,) = _need(p, "n")
        return Generated(gen_random_3ec(n, seed, int(p.get("extra", 0) or 0)))
    if fam == "star-graph":
        k, size = _need(p, "k", "m")
        g, cover = gen_random_star_graph(k, size, seed)
        return Generated(g, cover=cover)
    if fam == "pendant-triangle":
        return Generated(gen_pendant_triangle(int(p.get("k") or 4)))
    if fam == "petersen":
        return Generated(gen_petersen())
    if fam == "cube":
        return Generated(gen_cube(int(p.get("d") or 3)))
    if fam == "complete":
        (n,) = _need(p, "n")
        return Generated(gen_complete(n))
    if fam == "cycle":
        (n,) = _need(p, "n")
        return Generated(gen_cycle(n))
    if fam == "path":
        (n,) = _need(p, "n")
        return Generated(gen_path(n))
    if fam == "complete-bipartite":
        a, b = _need(p, "a", "b")
        return Generated(gen_complete_bipartite(a, b))
    if fam == "wheel":
        (k,) = _need(p, "k")
        return Generated(gen_wheel(k))
    if fam == "theta":
        return Generated(gen_theta(int(p.get("k") or 3), int(p.get("length") or 2)))
    raise PreconditionError(f"unknown family {spec.family!r}; known: {', '.join(FAMILIES)}")


FAMILIES = (
    "case-fixture", "complete", "complete-bipartite", "cube", "cycle", "double-star",
    "figure1", "gkd", "path", "pendant-triangle", "petersen", "random-3ec",
    "random-connected", "random-cubic", "random-min-degree", "star-graph", "theta",
    "w-tree", "wa", "wab", "wheel",
)
