"""Graph, multigraph and tree value types plus connectivity machinery.

Vertices are dense integers ``0..n-1`` and undirected edges are always
normalised to ``(min, max)`` tuples so that edge sets from different code
paths compare equal.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import GraphError, PreconditionError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``. Instances are
    immutable; the "modifying" helpers return new graphs.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n != len(self.adj):
            raise GraphError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if not 0 <= w < self.n:
                    raise GraphError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"parallel edge at {v}")
            if list(nbrs) != sorted(nbrs):
                raise GraphError(f"adjacency of {v} not sorted")
        for v, nbrs in enumerate(self.adj):
            for w in nbrs:
                if v not in self._adjset[w]:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise GraphError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise GraphError(f"parallel edge {(u, v)}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @cached_property
    def _adjset(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adj)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adjset[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    def max_degree(self) -> int:
        return max(self.degrees) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self._adjset[u]

    def without_edges(self, removed: Iterable[Sequence[int]]) -> "Graph":
        drop = {edge_key(*e) for e in removed}
        return Graph.from_edges(self.n, (e for e in self.edges if e not in drop))

    def with_edges(self, added: Iterable[Sequence[int]]) -> "Graph":
        return Graph.from_edges(self.n, list(self.edges) + [edge_key(*e) for e in added])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class IdMap:
    """Bidirectional vertex map between a host graph and a relabelled copy."""

    to_old: tuple[int, ...]
    to_new: dict = field(compare=False)

    @classmethod
    def from_sorted(cls, keep: Sequence[int]) -> "IdMap":
        keep = tuple(keep)
        return cls(keep, {v: i for i, v in enumerate(keep)})

    def old(self, v: int) -> int:
        return self.to_old[v]

    def new(self, v: int) -> int:
        return self.to_new[v]

    def old_edges(self, edges: Iterable[Edge]) -> set[Edge]:
        return {edge_key(self.to_old[u], self.to_old[v]) for u, v in edges}

    def new_edges(self, edges: Iterable[Edge]) -> set[Edge]:
        return {edge_key(self.to_new[u], self.to_new[v]) for u, v in edges}


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, IdMap]:
    """Induced subgraph on ``keep``, relabelled to ``0..k-1`` in sorted order."""
    keep_sorted = sorted(set(keep))
    for v in keep_sorted:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    idmap = IdMap.from_sorted(keep_sorted)
    new = idmap.to_new
    adj = []
    for v in keep_sorted:
        adj.append(tuple(sorted(new[w] for w in g.adj[v] if w in new)))
    return Graph(len(keep_sorted), tuple(adj)), idmap


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------

def connected_components(g: Graph, skip_vertices: Iterable[int] = (),
                         skip_edges: Iterable[Sequence[int]] = ()) -> list[frozenset[int]]:
    """Components of ``g`` minus the given vertices and edges, ordered by min vertex."""
    dead = set(skip_vertices)
    cut = {edge_key(*e) for e in skip_edges}
    seen = [False] * g.n
    for v in dead:
        seen[v] = True
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if seen[w]:
                    continue
                if cut and edge_key(v, w) in cut:
                    continue
                seen[w] = True
                comp.append(w)
                stack.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(g: Graph, skip_vertices: Iterable[int] = (),
                 skip_edges: Iterable[Sequence[int]] = ()) -> bool:
    """True when what remains has at most one component (the empty graph counts)."""
    dead = set(skip_vertices)
    cut = {edge_key(*e) for e in skip_edges}
    alive = [v for v in range(g.n) if v not in dead]
    if not alive:
        return True
    seen = set(dead)
    seen.add(alive[0])
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in seen or (cut and edge_key(v, w) in cut):
                continue
            seen.add(w)
            stack.append(w)
    return len(seen) == g.n


def component_of(g: Graph, start: Iterable[int], skip_vertices: Iterable[int] = (),
                 skip_edges: Iterable[Sequence[int]] = ()) -> set[int]:
    """All vertices reachable from any vertex of ``start``."""
    dead = set(skip_vertices)
    cut = {edge_key(*e) for e in skip_edges}
    seen = {v for v in start if v not in dead}
    stack = list(seen)
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in seen or w in dead or (cut and edge_key(v, w) in cut):
                continue
            seen.add(w)
            stack.append(w)
    return seen


def shortest_path(g: Graph, a: int, b: int, allowed: Optional[Iterable[int]] = None,
                  skip_edges: Iterable[Sequence[int]] = ()) -> Optional[list[int]]:
    """BFS path from ``a`` to ``b`` through ``allowed`` vertices, or None."""
    ok = None if allowed is None else set(allowed)
    if ok is not None and (a not in ok or b not in ok):
        return None
    cut = {edge_key(*e) for e in skip_edges}
    parent = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            path = [b]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for w in g.adj[v]:
            if w in parent or (ok is not None and w not in ok):
                continue
            if cut and edge_key(v, w) in cut:
                continue
            parent[w] = v
            queue.append(w)
    return None


# ---------------------------------------------------------------------------
# blocks, cut vertices, bridges
# ---------------------------------------------------------------------------

def _edge_blocks(g: Graph) -> list[list[Edge]]:
    """Biconnected components as edge lists (iterative Hopcroft-Tarjan)."""
    disc = [-1] * g.n
    low = [0] * g.n
    clock = 0
    blocks: list[list[Edge]] = []
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(g.adj[root]))]
        estack: list[Edge] = []
        while stack:
            v, parent, it = stack[-1]
            descended = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(g.adj[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    estack.append((v, w))
            if descended:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                block = []
                while True:
                    e = estack.pop()
                    block.append(edge_key(*e))
                    if e == (parent, v):
                        break
                blocks.append(block)
    return blocks


def bridges(g: Graph) -> frozenset[Edge]:
    """Edges whose removal increases the number of components."""
    return frozenset(b[0] for b in _edge_blocks(g) if len(b) == 1)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cutvertices: frozenset[int]
    endblock: tuple[bool, ...]

    def endblocks(self) -> list[frozenset[int]]:
        return [b for b, flag in zip(self.blocks, self.endblock) if flag]


def blocks_and_cutvertices(g: Graph) -> BlockDecomposition:
    """Block decomposition of a connected graph.

    Blocks are sorted by their sorted vertex lists. A block is flagged as an
    endblock when it contains at most one cut vertex.
    """
    if not is_connected(g):
        raise PreconditionError("block decomposition requires a connected graph")
    if g.n == 0:
        return BlockDecomposition((), frozenset(), ())
    vblocks = [frozenset(v for e in b for v in e) for b in _edge_blocks(g)]
    if not vblocks:
        vblocks = [frozenset({0})]
    vblocks.sort(key=sorted)
    count: dict[int, int] = defaultdict(int)
    for b in vblocks:
        for v in b:
            count[v] += 1
    cut = frozenset(v for v, c in count.items() if c > 1)
    flags = tuple(len(b & cut) <= 1 for b in vblocks)
    return BlockDecomposition(tuple(vblocks), cut, flags)


# ---------------------------------------------------------------------------
# 2-edge cuts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CutResult:
    cut_edges: tuple[Edge, Edge]
    component: frozenset[int]


def two_edge_cuts(g: Graph, block: Iterable[int]) -> list[tuple[Edge, Edge]]:
    """All edge pairs whose removal disconnects the (2-edge-connected) subgraph
    induced by ``block``.

    Each edge gets the set of non-tree edges whose fundamental cycle uses it,
    encoded as a bitmask over a BFS spanning tree. Two non-bridge edges form a
    cut exactly when their masks coincide, so grouping by mask finds every cut
    without testing all pairs.
    """
    sub, idmap = induced_subgraph(g, block)
    if sub.n == 0:
        return []
    root = 0
    parent = [-1] * sub.n
    order = [root]
    seen = [False] * sub.n
    seen[root] = True
    for v in order:
        for w in sub.adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    if len(order) != sub.n:
        raise PreconditionError("block does not induce a connected subgraph")
    tree = {edge_key(v, parent[v]) for v in order[1:]}
    mask_at = [0] * sub.n
    label: dict[Edge, int] = {}
    bit = 0
    for e in sub.edges:
        if e in tree:
            continue
        b = 1 << bit
        bit += 1
        label[e] = b
        mask_at[e[0]] ^= b
        mask_at[e[1]] ^= b
    acc = mask_at[:]
    for v in reversed(order[1:]):
        label[edge_key(v, parent[v])] = acc[v]
        acc[parent[v]] ^= acc[v]
    groups: dict[int, list[Edge]] = defaultdict(list)
    for e in sub.edges:
        if label[e]:
            groups[label[e]].append(e)
    pairs = []
    for es in groups.values():
        es.sort()
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                e, f = es[i], es[j]
                pairs.append((edge_key(idmap.old(e[0]), idmap.old(e[1])),
                              edge_key(idmap.old(f[0]), idmap.old(f[1]))))
    pairs.sort()
    return pairs


def min_two_edge_cut_component(g: Graph, block: Iterable[int],
                               avoid: Optional[int] = None) -> Optional[CutResult]:
    """The 2-edge cut of ``block`` with the smallest side not containing ``avoid``.

    Without ``avoid`` the smaller side of each cut is used. Ties go to the
    lexicographically smallest sorted side. Returns None when the block is
    3-edge-connected.
    """
    bset = frozenset(block)
    if len(bset) < 3:
        return None
    sub, idmap = induced_subgraph(g, bset)
    best = None
    for e, f in two_edge_cuts(g, bset):
        le = idmap.new_edges([e, f])
        start = idmap.new(e[0])
        side_new = component_of(sub, [start], skip_edges=le)
        side = frozenset(idmap.old(v) for v in side_new)
        other = bset - side
        if avoid is not None and avoid in bset:
            h = other if avoid in side else side
        else:
            h = min(side, other, key=lambda s: (len(s), sorted(s)))
        key = (len(h), sorted(h), (e, f))
        if best is None or key < best[0]:
            best = (key, CutResult((e, f), h))
    return None if best is None else best[1]


# ---------------------------------------------------------------------------
# multigraphs and orientations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Multigraph:
    """Multigraph with loops. ``edges`` hold ``(i, j, tag)`` where ``i, j``
    index ``labels``."""

    labels: tuple[int, ...]
    edges: tuple[tuple[int, int, object], ...]

    def __post_init__(self):
        tags = [t for _, _, t in self.edges]
        if len(set(tags)) != len(tags):
            raise GraphError("multigraph edge tags must be unique")
        for i, j, _ in self.edges:
            if not (0 <= i < len(self.labels) and 0 <= j < len(self.labels)):
                raise GraphError("multigraph endpoint out of range")

    def degree(self, i: int) -> int:
        return sum((a == i) + (b == i) for a, b, _ in self.edges)


@dataclass(frozen=True)
class Orientation:
    multigraph: Multigraph
    direction: tuple[tuple[int, int], ...]  # (tail, head) per edge, by index

    def in_degree(self, i: int) -> int:
        return sum(1 for _, h in self.direction if h == i)

    def out_degree(self, i: int) -> int:
        return sum(1 for t, _ in self.direction if t == i)

    def head_of(self, tag) -> int:
        for (_, _, t), (_, h) in zip(self.multigraph.edges, self.direction):
            if t == tag:
                return h
        raise KeyError(tag)


def almost_balanced_orientation(mg: Multigraph) -> Orientation:
    """Orient so that |in - out| <= 1 everywhere, with equality for even degree.

    Odd-degree vertices are joined to a phantom vertex, every component of the
    augmented multigraph is traversed by an Euler circuit (Hierholzer), edges
    are oriented in traversal direction and the phantom edges dropped.
    """
    k = len(mg.labels)
    phantom = k
    ends = [(a, b) for a, b, _ in mg.edges]
    odd = [i for i in range(k) if mg.degree(i) % 2]
    ends += [(phantom, i) for i in odd]
    inc: list[list[tuple[int, int]]] = [[] for _ in range(k + 1)]
    for eid, (a, b) in enumerate(ends):
        inc[a].append((eid, b))
        if a != b:
            inc[b].append((eid, a))
    used = [False] * len(ends)
    ptr = [0] * (k + 1)
    direction: list[Optional[tuple[int, int]]] = [None] * len(ends)
    for start in range(k + 1):
        stack = [start]
        while stack:
            v = stack[-1]
            while ptr[v] < len(inc[v]) and used[inc[v][ptr[v]][0]]:
                ptr[v] += 1
            if ptr[v] == len(inc[v]):
                stack.pop()
                continue
            eid, w = inc[v][ptr[v]]
            used[eid] = True
            direction[eid] = (v, w)
            stack.append(w)
    real = tuple(direction[i] for i in range(len(mg.edges)))
    return Orientation(mg, real)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# trees
# ---------------------------------------------------------------------------

class Tree:
    """An acyclic, connected edge subset of a host graph."""

    __slots__ = ("host", "edges", "_deg")

    def __init__(self, host: Graph, edges: Iterable[Sequence[int]], check: bool = True):
        self.host = host
        self.edges = frozenset(edge_key(*e) for e in edges)
        self._deg = None
        if check:
            self._validate()

    def _validate(self) -> None:
        for e in self.edges:
            if e not in self.host.edge_set:
                raise GraphError(f"tree edge {e} is not an edge of the host")
        parent = {}

        def find(x):
            while parent.get(x, x) != x:
                parent[x] = parent.get(parent[x], parent[x])
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                raise GraphError(f"edge {(u, v)} closes a cycle")
            parent[ru] = rv
        roots = {find(v) for v in self.vertices}
        if len(roots) > 1:
            raise GraphError("tree edges do not form a connected subgraph")

    @property
    def vertices(self) -> frozenset[int]:
        vs = {v for e in self.edges for v in e}
        if not vs and self.host.n == 1:
            vs = {0}
        return frozenset(vs)

    @property
    def degrees(self) -> list[int]:
        if self._deg is None:
            deg = [0] * self.host.n
            for u, v in self.edges:
                deg[u] += 1
                deg[v] += 1
            self._deg = deg
        return self._deg

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> list[int]:
        return sorted(u if w == v else w for u, w in self.edges if v in (u, w))

    @property
    def is_spanning(self) -> bool:
        return len(self.edges) == self.host.n - 1 and len(self.vertices) == self.host.n

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Tree) and self.host == other.host and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(self.edges)

    def __repr__(self) -> str:
        return f"Tree({self.sorted_edges()})"


def spanning_tree_or_raise(host: Graph, edges: Iterable[Sequence[int]]) -> Tree:
    t = Tree(host, edges)
    if not t.is_spanning:
        raise GraphError("edge set is a tree but does not span the host")
    return t


def bfs_tree(g: Graph, root: int = 0) -> Tree:
    """Spanning tree of a connected graph by breadth-first search."""
    if g.n == 0:
        return Tree(g, ())
    parent = {root: None}
    queue = deque([root])
    edges = []
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if w not in parent:
                parent[w] = v
                edges.append((v, w))
                queue.append(w)
    if len(parent) != g.n:
        raise PreconditionError("graph is disconnected")
    return Tree(g, edges, check=False)
