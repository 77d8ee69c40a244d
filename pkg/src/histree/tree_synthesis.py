"""Spanning-tree constructions.

``grow_star_tree`` grows a tree star by star from a cover with large stars and
returns a spanning tree whose degree-2 vertices are pairwise non-adjacent.
``build_tree_no_adjacent_deg2`` feeds it a locally maximal bipartite subgraph.

``build_good_tree`` returns a spanning tree without G-bad paths for any
connected graph. It peels off a low-degree vertex or a reducible structure,
solves the smaller graph and lifts the answer back. Every lifted tree is
re-checked before it is handed up a level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .certificates import (
    TreeLike,
    WConfig,
    cycle_edges,
    degree2_independent,
    find_bad_path,
    path_edges,
    Verdict,
)
from .errors import GraphError, InternalBugError, NoStarCoverError, PreconditionError
from .graph_core import (
    Edge,
    Graph,
    IdMap,
    Multigraph,
    Tree,
    almost_balanced_orientation,
    bfs_tree,
    edge_key,
    induced_subgraph,
    is_connected,
)
from .generators import is_triangle_free
from .reduction_engine import find_structure
from .structure_search import StarCover, find_star_cover, max_bipartite_local


def _edge_set(t: TreeLike) -> set[Edge]:
    if isinstance(t, Tree):
        return set(t.edges)
    return {edge_key(*e) for e in t}


def _degree_map(edges: Iterable[Edge]) -> dict[int, int]:
    deg: dict[int, int] = {}
    for u, v in edges:
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return deg


def _tree_nbrs(edges: Iterable[Edge], v: int) -> list[int]:
    return sorted(b if a == v else a for a, b in edges if v in (a, b))


def _as_tree(g: Graph, edges: Iterable[Edge], trace: Sequence[str], what: str) -> Tree:
    try:
        t = Tree(g, edges)
    except GraphError as exc:
        raise InternalBugError(f"{what} is not a tree: {exc}", trace, sorted(edges)) from None
    if not t.is_spanning:
        raise InternalBugError(f"{what} does not span the graph", trace, sorted(edges))
    return t


# ---------------------------------------------------------------------------
# star growth
# ---------------------------------------------------------------------------

@dataclass
class GrowthState:
    """Partial tree of the star-growth loop, kept for diagnostics."""

    tree_edges: frozenset
    vertices: frozenset
    absorbed: frozenset
    step: int = 0
    last_move: str = "start"
    history: list = field(default_factory=list)


def check_growth_conditions(g: Graph, cover: StarCover, state: GrowthState) -> Verdict:
    """The three invariants of the growing tree.

    (1) no two adjacent vertices of degree 2,
    (2) every vertex outside the tree lies in a star that is entirely outside,
    (3) a leaf with a neighbour outside the tree hangs off a vertex of degree >= 5.
    """
    edges = state.tree_edges
    inside = state.vertices
    deg = _degree_map(edges)
    try:
        Tree(g, edges)
    except GraphError as exc:
        return Verdict(False, f"not a tree: {exc}")
    if edges and {v for e in edges for v in e} != set(inside):
        return Verdict(False, "vertex set disagrees with edge set")
    for u, v in sorted(edges):
        if deg[u] == 2 and deg[v] == 2:
            return Verdict(False, "condition (1): adjacent degree-2 vertices", (u, v))
    for i, (c, leaves) in enumerate(cover.stars):
        members = {c, *leaves}
        hit = members & inside
        if hit and hit != members:
            return Verdict(False, f"condition (2): star {i} is split by the tree", i)
        if (i in state.absorbed) != bool(hit):
            return Verdict(False, f"condition (2): star {i} bookkeeping is stale", i)
    for v in sorted(inside):
        if deg.get(v) == 1 and any(w not in inside for w in g.adj[v]):
            (w,) = _tree_nbrs(edges, v)
            if deg[w] < 5:
                return Verdict(False, "condition (3): exposed leaf next to a vertex "
                                      f"of degree {deg[w]}", (v, w))
    return Verdict(True)


def _check_star_preconditions(g: Graph, cover: StarCover) -> None:
    v = cover.validate(g, 6)
    if not v:
        raise PreconditionError(f"invalid star cover: {v.reason}")
    if len(cover.stars) == 1:
        return
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    if g.min_degree() < 3:
        raise PreconditionError("graph must have minimum degree at least 3")
    if not is_triangle_free(g):
        raise PreconditionError("graph must be triangle-free")


def grow_star_tree(g: Graph, cover: StarCover,
                   on_step: Optional[Callable[[GrowthState], None]] = None) -> Tree:
    """Spanning tree of ``g`` with no two adjacent degree-2 vertices.

    Requires a cover by stars with at least 6 leaves. Apart from the trivial
    one-star case, ``g`` must be connected, triangle-free and of minimum
    degree 3. The growth conditions are re-checked after every move and the
    state is attached to the error if one ever fails.
    """
    _check_star_preconditions(g, cover)
    stars = [(c, tuple(sorted(ls))) for c, ls in cover.stars]
    star_of = {}
    for i, (c, ls) in enumerate(stars):
        star_of[c] = i
        for u in ls:
            star_of[u] = i

    def star_edges(i):
        c, ls = stars[i]
        return {edge_key(c, u) for u in ls}

    def members(i):
        c, ls = stars[i]
        return {c, *ls}

    edges = set(star_edges(0))
    inside = members(0)
    absorbed = {0}
    state = GrowthState(frozenset(edges), frozenset(inside), frozenset(absorbed))
    history = state.history

    def commit(add_stars, add, remove, move):
        nonlocal state
        for i in add_stars:
            edges.update(star_edges(i))
            inside.update(members(i))
            absorbed.add(i)
        edges.update(edge_key(*e) for e in add)
        edges.difference_update(edge_key(*e) for e in remove)
        history.append(move)
        state = GrowthState(frozenset(edges), frozenset(inside), frozenset(absorbed),
                            state.step + 1, move, history)
        verdict = check_growth_conditions(g, cover, state)
        if not verdict:
            raise InternalBugError(f"growth condition broken after {move}: {verdict.reason}",
                                   history, state)
        if state.step > g.n:
            raise InternalBugError("star growth did not terminate", history, state)
        if on_step is not None:
            on_step(state)

    if on_step is not None:
        on_step(state)
    while len(inside) < g.n:
        deg = _degree_map(edges)
        if _claim1_move(g, stars, star_of, inside, deg, commit):
            continue
        if _claim2_move(g, stars, star_of, inside, commit):
            continue
        _orientation_move(g, stars, star_of, inside, absorbed, edges, deg, commit, state)

    tree = _as_tree(g, edges, history, "grown tree")
    verdict = degree2_independent(tree)
    if not verdict:
        raise InternalBugError(f"grown tree fails its certificate: {verdict.reason}",
                               history, state)
    return tree


def _outside_nbrs(g, v, inside):
    return [u for u in g.adj[v] if u not in inside]


def _claim1_move(g, stars, star_of, inside, deg, commit) -> bool:
    # an outside neighbour that can be attached directly
    for v in sorted(inside):
        for u in _outside_nbrs(g, v, inside):
            j = star_of[u]
            if deg.get(v, 0) > 1 or u == stars[j][0]:
                commit([j], [(u, v)], [], "Claim 1: attach star")
                return True
    # a leaf of an outside star reaching a second outside star
    for v in sorted(inside):
        for u in _outside_nbrs(g, v, inside):
            j = star_of[u]
            centre = stars[j][0]
            for w in g.adj[u]:
                if w in inside or w == centre:
                    continue
                k = star_of[w]
                if k == j:
                    raise InternalBugError("two leaves of one star are adjacent; "
                                           "the graph has a triangle")
                commit([j, k], [(u, v), (u, w)], [], "Claim 1: attach two stars")
                return True
    return False


def _claim2_move(g, stars, star_of, inside, commit) -> bool:
    for v in sorted(inside):
        out = sorted(_outside_nbrs(g, v, inside))
        if len(out) < 2:
            continue
        u, u2 = out[0], out[1]
        j, j2 = star_of[u], star_of[u2]
        if j != j2:
            commit([j, j2], [(v, u), (v, u2)], [], "Claim 2: two stars")
        else:
            commit([j], [(v, u), (v, u2)], [(u2, stars[j][0])], "Claim 2: one star")
        return True
    return False


def _orientation_move(g, stars, star_of, inside, absorbed, edges, deg, commit, state) -> None:
    for v in inside:
        if deg.get(v, 0) > 0 and all(deg[w] == 1 for w in _tree_nbrs(edges, v)):
            if deg[v] > 1 or len(edges) == 1:
                raise InternalBugError("tree is a star before the orientation phase",
                                       state.history, state)
    picks = []
    for i, (c, ls) in enumerate(stars):
        if i in absorbed:
            continue
        if not any(w in inside for x in (c, *ls) for w in g.adj[x]):
            continue
        chosen = None
        for u in ls:
            tn = sorted(w for w in g.adj[u] if w in inside)
            if len(tn) >= 2:
                chosen = (u, tn[0], tn[1])
                break
        if chosen is None:
            raise InternalBugError(f"star {i} touches the tree but no leaf has two tree "
                                   "neighbours", state.history, state)
        picks.append((i, *chosen))
    if not picks:
        raise InternalBugError("tree is not spanning but no outside star touches it",
                               state.history, state)
    w_of = {}
    for _, _, v1, v2 in picks:
        for v in (v1, v2):
            if deg.get(v) != 1:
                raise InternalBugError(f"vertex {v} with an outside neighbour is not a leaf",
                                       state.history, state)
            (w_of[v],) = _tree_nbrs(edges, v)
    labels = sorted({w_of[v] for _, _, v1, v2 in picks for v in (v1, v2)})
    index = {w: k for k, w in enumerate(labels)}
    mg = Multigraph(tuple(labels),
                    tuple((index[w_of[v1]], index[w_of[v2]], i) for i, _, v1, v2 in picks))
    orient = almost_balanced_orientation(mg)
    add, remove = [], []
    for i, u, v1, v2 in picks:
        # relabel so the edge points from w(v1) to w(v2)
        if labels[orient.head_of(i)] != w_of[v2]:
            v1, v2 = v2, v1
        add += [(u, v1), (u, v2)]
        remove.append((w_of[v2], v2))
    before = dict(deg)
    commit([i for i, *_ in picks], add, remove, "orientation")
    after = _degree_map(edges)
    for w in labels:
        need = -(-before[w] // 2)
        if after.get(w, 0) < need or need < 3:
            raise InternalBugError(f"orientation step left vertex {w} with degree "
                                   f"{after.get(w, 0)} (before {before[w]})",
                                   state.history, state)


def build_tree_no_adjacent_deg2(g: Graph) -> Tree:
    """Spanning tree with an independent set of degree-2 vertices.

    Takes a locally maximal bipartite subgraph H, looks for a cover of H by
    stars with at least 6 leaves and grows the tree inside H.
    Raises NoStarCoverError when no such cover is found, which is the
    expected outcome for graphs of modest minimum degree.
    """
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    h = max_bipartite_local(g).graph
    search = find_star_cover(h, 6)
    if search.cover is None:
        raise NoStarCoverError(f"no star cover found ({search.status})")
    if len(search.cover.stars) > 1 and h.min_degree() < 3:
        raise PreconditionError("bipartite subgraph has minimum degree below 3")
    t = grow_star_tree(h, search.cover)
    return Tree(g, t.edges)


# ---------------------------------------------------------------------------
# good trees: lifting through low-degree vertices
# ---------------------------------------------------------------------------

def _good_or_none(g: Graph, edges: set[Edge], trace, what) -> Optional[Tree]:
    t = _as_tree(g, edges, trace, what)
    return t if find_bad_path(g, t) is None else None


def _only_other(edges, v, other, trace, what) -> int:
    nb = _tree_nbrs(edges, v)
    if len(nb) != 2 or other not in nb:
        raise InternalBugError(f"{what}: expected vertex {v} of tree degree 2 next to {other}",
                               trace, sorted(edges))
    return nb[0] if nb[1] == other else nb[1]


def lift_degree1(g: Graph, v: int, t_prime: TreeLike, trace: Optional[list] = None) -> Tree:
    """Extend a good tree of ``g - v`` (in ``g``'s ids) over the pendant vertex ``v``."""
    tr = trace if trace is not None else []
    (x,) = g.adj[v]
    t1 = _edge_set(t_prime) | {edge_key(v, x)}
    t = _good_or_none(g, t1, tr, "T1")
    if t is not None:
        tr.append("Claim 1:T1")
        return t
    y = _only_other(t1, x, v, tr, "T1")
    u = min(w for w in g.adj[x] if w not in (v, y))
    t2 = (t1 - {edge_key(x, y)}) | {edge_key(x, u)}
    t = _good_or_none(g, t2, tr, "T2")
    if t is not None:
        tr.append("Claim 1:T2")
        return t
    w = _only_other(t2, u, x, tr, "T2")
    t3 = (t2 - {edge_key(u, w)}) | {edge_key(x, y)}
    t = _good_or_none(g, t3, tr, "T3")
    if t is None:
        raise InternalBugError("Claim 1: T3 has a bad path", tr, sorted(t3))
    tr.append("Claim 1:T3")
    return t


@dataclass(frozen=True)
class Degree2Branch:
    """How a degree-2 vertex ``v`` with neighbours ``x``, ``y`` is reduced.

    ``kind`` is "nonadjacent" (child G - v + xy), "high-degree" (child G - vx),
    "G'" (child G - v - xy) or "G''" (child G - v - x - y + x'y').
    """

    kind: str
    v: int
    x: int
    y: int
    x2: Optional[int] = None
    y2: Optional[int] = None


def degree2_branch(g: Graph, v: int) -> Degree2Branch:
    x, y = g.adj[v]
    if not g.has_edge(x, y):
        return Degree2Branch("nonadjacent", v, x, y)
    odd = [w for w in (x, y) if g.degree(w) != 3]
    if odd:
        # drop the edge from v to the first neighbour of degree other than 3
        return Degree2Branch("high-degree", v, odd[0], y if odd[0] == x else x)
    (x2,) = [w for w in g.adj[x] if w not in (v, y)]
    (y2,) = [w for w in g.adj[y] if w not in (v, x)]
    sub = g.without_edges([(x, y)])
    if is_connected(sub, skip_vertices=[v]):
        return Degree2Branch("G'", v, x, y, x2, y2)
    return Degree2Branch("G''", v, x, y, x2, y2)


def degree2_child(g: Graph, b: Degree2Branch) -> tuple[Graph, Optional[IdMap]]:
    """The smaller graph named by ``b``; the IdMap translates its ids back."""
    v, x, y = b.v, b.x, b.y
    if b.kind == "high-degree":
        return g.without_edges([(v, x)]), None
    if b.kind == "G''":
        h, m = induced_subgraph(g, [w for w in range(g.n) if w not in (v, x, y)])
        if g.has_edge(b.x2, b.y2):
            raise InternalBugError("x'y' is already an edge although G' is disconnected")
        return h.with_edges([(m.new(b.x2), m.new(b.y2))]), m
    h, m = induced_subgraph(g, [w for w in range(g.n) if w != v])
    if b.kind == "nonadjacent":
        if h.has_edge(m.new(x), m.new(y)):
            raise InternalBugError("xy already present in the non-adjacent branch")
        return h.with_edges([(m.new(x), m.new(y))]), m
    return h.without_edges([(m.new(x), m.new(y))]), m


def lift_degree2(g: Graph, b: Degree2Branch, t_prime: TreeLike,
                 trace: Optional[list] = None) -> Tree:
    """Extend a good tree of the child graph named by ``b`` (edges in ``g``'s
    ids, possibly including the added edge) to a good spanning tree of ``g``."""
    tr = trace if trace is not None else []
    tp = _edge_set(t_prime)
    v, x, y = b.v, b.x, b.y
    e = edge_key

    def accept(edges, label):
        t = _good_or_none(g, edges, tr, label)
        if t is not None:
            tr.append(f"Claim 2.{prefix}:{label}" if prefix else f"Claim 2.{label}")
        return t

    if b.kind == "nonadjacent":
        prefix = "nonadjacent"
        if e(x, y) in tp:
            t = accept((tp - {e(x, y)}) | {e(x, v), e(y, v)}, "T1")
            if t is None:
                raise InternalBugError("Claim 2: T1 has a bad path", tr, sorted(tp))
            return t
        t2 = tp | {e(x, v)}
        t = accept(t2, "T2")
        if t:
            return t
        w = _only_other(t2, x, v, tr, "T2")
        u = min(z for z in g.adj[x] if z not in (v, w))
        t3 = (t2 - {e(x, w)}) | {e(x, u)}
        t = accept(t3, "T3")
        if t:
            return t
        u2 = _only_other(t3, u, x, tr, "T3")
        t4 = (t3 - {e(u, u2)}) | {e(x, w)}
        t = accept(t4, "T4")
        if t is None:
            raise InternalBugError("Claim 2: T4 has a bad path", tr, sorted(t4))
        return t

    if b.kind == "high-degree":
        prefix = ""
        t = accept(set(tp), "adjacent.high-degree")
        if t is None:
            raise InternalBugError("Claim 2: tree of G - vx is not good in G", tr, sorted(tp))
        return t

    x2, y2 = b.x2, b.y2
    if b.kind == "G'":
        prefix = "adjacent.G'"
        for label, cand in (("T1", tp | {e(v, x)}), ("T2", tp | {e(v, y)}),
                            ("T3", (tp | {e(v, x), e(x, y)}) - {e(y, y2)})):
            t = accept(cand, label)
            if t:
                return t
        raise InternalBugError("Claim 2: T1, T2 and T3 all have bad paths", tr, sorted(tp))

    prefix = "adjacent.G''"
    if e(x2, y2) not in tp:
        raise InternalBugError("x'y' is not in the tree of G''", tr, sorted(tp))
    deg = _degree_map(tp)
    base = tp - {e(x2, y2)}
    if deg[x2] == 2 and deg[y2] == 2:
        label, cand = "T4", base | {e(x2, x), e(x, v), e(v, y), e(y, y2)}
    elif deg[x2] != 2:
        label, cand = "T5", base | {e(x2, x), e(x, y), e(y, v), e(y, y2)}
    else:
        label, cand = "T5", base | {e(y2, y), e(y, x), e(x, v), e(x, x2)}
    t = accept(cand, label)
    if t is None:
        raise InternalBugError(f"Claim 2: {label} has a bad path", tr, sorted(cand))
    return t


# ---------------------------------------------------------------------------
# good trees: the reduction loop
# ---------------------------------------------------------------------------

@dataclass
class _Frame:
    graph: Graph
    child: Graph
    idmap: Optional[IdMap]
    lift: Callable
    label: str


def _case2_segment(path: Sequence[int], s: frozenset) -> tuple[int, ...]:
    marks = [i for i, v in enumerate(path) if v in s]
    best = None
    for a, b in zip(marks, marks[1:]):
        seg = tuple(path[a:b + 1])
        if best is None or (len(seg), seg) < (len(best), best):
            best = seg
    return best


def _case3_lift(g: Graph, c: WConfig, t: set[Edge]) -> set[Edge]:
    v = c.centre
    x, y = c.connectors
    out = set(t)
    out.update(edge_key(x, w) for w in g.adj[x])
    skip = {edge_key(v, c.path_p[0]), edge_key(v, y)}
    out.update(edge_key(v, w) for w in g.adj[v] if edge_key(v, w) not in skip)
    return out


def _reduce(g: Graph, trace: list) -> _Frame:
    deg = g.degrees
    for d in (1, 2):
        v = next((u for u in range(g.n) if deg[u] == d), None)
        if v is None:
            continue
        if d == 1:
            h, m = induced_subgraph(g, [w for w in range(g.n) if w != v])
            return _Frame(g, h, m, lambda t, tr, v=v: lift_degree1(g, v, t, tr), "Claim 1")
        b = degree2_branch(g, v)
        h, m = degree2_child(g, b)
        return _Frame(g, h, m, lambda t, tr, b=b: lift_degree2(g, b, t, tr), "Claim 2")

    s = frozenset(v for v in range(g.n) if deg[v] >= 4)
    r = find_structure(g, s)

    def same(label):
        def lift(t, tr):
            tree = _as_tree(g, t, tr, label)
            if find_bad_path(g, tree) is not None:
                raise InternalBugError(f"{label}: tree of the reduced graph is not good in G",
                                       tr, sorted(t))
            tr.append(label)
            return tree
        return lift

    if r.variant == "C":
        return _Frame(g, g.without_edges(cycle_edges(r.cycle)), None, same("Case 1"), "Case 1")
    if r.variant == "P":
        seg = _case2_segment(r.path, s)
        return _Frame(g, g.without_edges(path_edges(seg)), None, same("Case 2"), "Case 2")
    c = r.config
    x, y = c.connectors
    drop = c.vertices() - {x, y}
    h, m = induced_subgraph(g, [w for w in range(g.n) if w not in drop])

    def lift3(t, tr, c=c):
        edges = _case3_lift(g, c, t)
        tree = _as_tree(g, edges, tr, "Case 3")
        if find_bad_path(g, tree) is not None:
            raise InternalBugError("Case 3: lifted tree has a bad path", tr, sorted(edges))
        tr.append(f"Case 3:{c.kind}")
        return tree

    return _Frame(g, h, m, lift3, "Case 3")


def build_good_tree_with_trace(g: Graph) -> tuple[Tree, list[str]]:
    """Good spanning tree plus the branch labels used, outermost first."""
    if g.n == 0:
        raise PreconditionError("graph has no vertices")
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    frames: list[_Frame] = []
    cur = g
    descent: list[str] = []
    while cur.n > 3:
        try:
            frame = _reduce(cur, descent)
        except InternalBugError as exc:
            raise InternalBugError(str(exc), descent + list(exc.trace), exc.state) from None
        if frame.child.n + frame.child.m >= cur.n + cur.m:
            raise InternalBugError("reduction did not shrink the graph", descent)
        descent.append(frame.label)
        frames.append(frame)
        cur = frame.child
    edges = set(bfs_tree(cur).edges)
    lifted: list[str] = []
    for frame in reversed(frames):
        if frame.idmap is not None:
            edges = frame.idmap.old_edges(edges)
        tr: list[str] = []
        try:
            tree = frame.lift(edges, tr)
        except InternalBugError as exc:
            raise InternalBugError(str(exc), descent[:len(frames) - len(lifted)] + tr,
                                   exc.state) from None
        lifted.append(tr[-1])
        edges = set(tree.edges)
    trace = list(reversed(lifted)) + ["base"]
    tree = _as_tree(g, edges, trace, "result")
    if find_bad_path(g, tree) is not None:
        raise InternalBugError("result has a bad path", trace, sorted(edges))
    return tree, trace


def build_good_tree(g: Graph) -> Tree:
    """Spanning tree of ``g`` with no G-bad path."""
    return build_good_tree_with_trace(g)[0]


__all__ = [
    "Degree2Branch", "GrowthState", "build_good_tree", "build_good_tree_with_trace",
    "build_tree_no_adjacent_deg2", "check_growth_conditions", "degree2_branch",
    "degree2_child", "grow_star_tree", "lift_degree1", "lift_degree2",
]
