"""Searches for the substructures the tree constructions consume.

* chordless cycles whose removal keeps the graph connected,
* induced paths whose edge (or vertex) removal keeps the graph connected,
* k-rails,
* star covers with large stars,
* bipartite subgraphs keeping at least half of every degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .certificates import Verdict, cycle_edges, path_edges
from .errors import PreconditionError
from .graph_core import (
    Graph,
    component_of,
    connected_components,
    edge_key,
    is_connected,
    shortest_path,
)


# ---------------------------------------------------------------------------
# chordless cycles
# ---------------------------------------------------------------------------

def _cycles_of_length(g: Graph, ok: set[int], s: int, length: int,
                      reached: list[bool]) -> Iterator[tuple[int, ...]]:
    path = [s]
    on_path = {s}
    # iterators over candidate extensions, one per depth
    stack = [iter(g.adj[s])]
    while stack:
        k = len(path) - 1
        advanced = False
        for c in stack[-1]:
            if c <= s or c not in ok or c in on_path:
                continue
            final = k + 1 == length - 1
            touches_s = c in g.neighbor_set(s)
            if k >= 1 and touches_s != final:
                continue
            if k == 0 and final:
                continue
            if any(w in on_path and w != path[-1] and w != s for w in g.adj[c]):
                continue
            if final:
                if path[1] < c:
                    yield tuple(path + [c])
                continue
            path.append(c)
            on_path.add(c)
            if len(path) == length - 1:
                reached[0] = True
            stack.append(iter(g.adj[c]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            last = path.pop()
            on_path.discard(last)


def chordless_cycles(g: Graph, allowed: Optional[Iterable[int]] = None) -> Iterator[tuple[int, ...]]:
    """Every chordless cycle inside ``allowed``, by length then lexicographically.

    A cycle is written starting at its smallest vertex, in the direction whose
    second vertex is smaller than its last.
    """
    ok = set(range(g.n)) if allowed is None else set(allowed)
    verts = sorted(ok)
    for length in range(3, len(verts) + 1):
        reached = [False]
        for s in verts:
            yield from _cycles_of_length(g, ok, s, length, reached)
        if not reached[0]:
            return


def find_nonseparating_induced_cycle(g: Graph, forbidden: Iterable[int] = (),
                                     mode: str = "vertex") -> Optional[tuple[int, ...]]:
    """First chordless cycle avoiding ``forbidden`` whose removal keeps ``g``
    connected.

    ``mode="vertex"`` removes the cycle's vertices, ``mode="edge"`` only its
    edges. Returns None only after every chordless cycle has been tried.
    """
    if mode not in ("vertex", "edge"):
        raise ValueError(f"unknown mode {mode!r}")
    banned = set(forbidden)
    allowed = [v for v in range(g.n) if v not in banned]
    for cyc in chordless_cycles(g, allowed):
        if mode == "vertex":
            if is_connected(g, skip_vertices=cyc):
                return cyc
        elif is_connected(g, skip_edges=cycle_edges(cyc)):
            return cyc
    return None


# ---------------------------------------------------------------------------
# induced paths
# ---------------------------------------------------------------------------

def induced_paths(g: Graph, a: int, b: int, allowed: Optional[Iterable[int]] = None,
                  length: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All induced ``a``-``b`` paths inside ``allowed`` (optionally with exactly
    ``length`` edges), depth-first in lexicographic order."""
    ok = set(range(g.n)) if allowed is None else set(allowed)
    if a not in ok or b not in ok or a == b:
        return
    path = [a]
    on_path = {a}
    stack = [iter(g.adj[a])]
    while stack:
        advanced = False
        for c in stack[-1]:
            if c not in ok or c in on_path:
                continue
            if any(w in on_path and w != path[-1] for w in g.adj[c]):
                continue
            if c == b:
                if length is None or len(path) == length:
                    yield tuple(path + [b])
                continue
            if length is not None and len(path) >= length:
                continue
            path.append(c)
            on_path.add(c)
            stack.append(iter(g.adj[c]))
            advanced = True
            break
        if not advanced:
            stack.pop()
            on_path.discard(path.pop())


def induced_paths_by_length(g: Graph, a: int, b: int,
                            allowed: Optional[Iterable[int]] = None) -> Iterator[tuple[int, ...]]:
    ok = set(range(g.n)) if allowed is None else set(allowed)
    for length in range(1, len(ok)):
        yield from induced_paths(g, a, b, ok, length)


def shortcut_to_induced(g: Graph, path: Sequence[int]) -> list[int]:
    """Drop detours: from each vertex jump to its furthest later neighbour."""
    pos = {v: i for i, v in enumerate(path)}
    out = [path[0]]
    i = 0
    while i < len(path) - 1:
        j = max(pos[w] for w in g.adj[path[i]] if w in pos and pos[w] > i)
        out.append(path[j])
        i = j
    return out


def _tracked(g: Graph, path: Sequence[int], anchor: Sequence[int], mode: str):
    if mode == "edge":
        comps = connected_components(g, skip_edges=path_edges(path))
    else:
        comps = connected_components(g, skip_vertices=path)
    if not comps:
        return comps, frozenset()
    if anchor:
        a0 = min(anchor)
        k = next(c for c in comps if a0 in c)
    else:
        k = max(comps, key=lambda c: (len(c), -min(c)))
    return comps, k


def _exchange_candidates(g: Graph, path: list[int], comps, k, region: set[int], mode: str):
    pos = {v: i for i, v in enumerate(path)}
    pedges = path_edges(path)
    for comp in comps:
        if comp is k:
            continue
        if mode == "edge":
            idx = sorted(pos[v] for v in comp if v in pos)
        else:
            idx = sorted({pos[w] for v in comp for w in g.adj[v] if w in pos})
        if len(idx) < 2:
            continue
        i, j = idx[0], idx[-1]
        if mode == "edge":
            gains = any(path[t] in k for t in range(i + 1, j))
            if not gains:
                continue
            detour = shortest_path(g, path[i], path[j], allowed=comp & region, skip_edges=pedges)
        else:
            gains = any(any(w in k for w in g.adj[path[t]]) for t in range(i + 1, j))
            if not gains:
                continue
            detour = shortest_path(g, path[i], path[j],
                                   allowed=(comp & region) | {path[i], path[j]})
        if detour is None:
            continue
        new = path[:i] + detour + path[j + 1:]
        if len(set(new)) != len(new):
            continue
        yield shortcut_to_induced(g, new)


def exchange_climb(g: Graph, a: int, b: int, *, anchor: Iterable[int] = (),
                   region: Optional[Iterable[int]] = None,
                   mode: str = "edge") -> tuple[list[int], bool]:
    """Hill-climb over induced ``a``-``b`` paths inside ``region``.

    The tracked quantity is the size of the component of ``g - E(P)`` (or
    ``g - V(P)`` in vertex mode) containing ``anchor`` (the largest component
    when ``anchor`` is empty). A move replaces the stretch of the path between
    the first and last contact with another component L by a detour through L,
    then shortcuts chords. Returns ``(path, success)``; ``success`` means the
    removal leaves ``g`` connected.
    """
    reg = set(range(g.n)) if region is None else set(region)
    anchor = sorted(set(anchor))
    start = shortest_path(g, a, b, allowed=reg)
    if start is None:
        raise PreconditionError(f"no {a}-{b} path inside region")
    path = start
    comps, k = _tracked(g, path, anchor, mode)
    while True:
        if len(comps) <= 1:
            return path, True
        best = None
        for cand in _exchange_candidates(g, path, comps, k, reg, mode):
            c_comps, c_k = _tracked(g, cand, anchor, mode)
            key = (-len(c_k), tuple(cand))
            if best is None or key < best[0]:
                best = (key, cand, c_comps, c_k)
        if best is None or len(best[3]) <= len(k):
            return path, False
        _, path, comps, k = best


def find_nonseparating_induced_path(g: Graph, a: int, b: int, anchor: Iterable[int] = (),
                                    region: Optional[Iterable[int]] = None) -> Optional[list[int]]:
    """Induced ``a``-``b`` path P with ``g - E(P)`` connected, or None.

    Guaranteed to succeed on 3-edge-connected graphs; elsewhere None means the
    exchange search got stuck.
    """
    if a == b:
        raise PreconditionError("endpoints must differ")
    path, ok = exchange_climb(g, a, b, anchor=anchor, region=region, mode="edge")
    return path if ok else None


# ---------------------------------------------------------------------------
# k-rails
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KRail:
    endpoints: tuple[int, int]
    paths: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.paths)


def find_k_rail(g: Graph, region: Optional[Iterable[int]] = None) -> Optional[KRail]:
    """A k-rail (k >= 3) lying inside ``region``, or None.

    Threads of degree-2 vertices are followed from every vertex of other
    degree and grouped by their end pair; the smallest end pair carrying at
    least three threads wins and all of its threads are returned.
    """
    reg = set(range(g.n)) if region is None else set(region)
    threads: dict[tuple[int, int], list[tuple[int, ...]]] = {}
    for x in range(g.n):
        if g.degree(x) == 2:
            continue
        for w in g.adj[x]:
            walk = [x, w]
            prev, cur = x, w
            while g.degree(cur) == 2 and cur != x:
                nxt = g.adj[cur][0] if g.adj[cur][1] == prev else g.adj[cur][1]
                walk.append(nxt)
                prev, cur = cur, nxt
            if cur != x and x < cur:
                threads.setdefault((x, cur), []).append(tuple(walk))
    for ends in sorted(threads):
        inside = [p for p in threads[ends] if all(v in reg for v in p)]
        if len(inside) >= 3:
            return KRail(ends, tuple(sorted(inside)))
    return None


# ---------------------------------------------------------------------------
# star covers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StarCover:
    stars: tuple[tuple[int, frozenset[int]], ...]

    def validate(self, g: Graph, min_size: int = 1) -> Verdict:
        seen: set[int] = set()
        for centre, leaves in self.stars:
            members = {centre, *leaves}
            if centre in leaves or seen & members:
                return Verdict(False, "stars overlap")
            seen |= members
            if len(leaves) < min_size:
                return Verdict(False, f"star at {centre} has size {len(leaves)} < {min_size}")
            if any(not g.has_edge(centre, u) for u in leaves):
                return Verdict(False, f"star at {centre} uses a non-edge")
        if seen != set(range(g.n)):
            return Verdict(False, "stars do not cover every vertex")
        return Verdict(True)

    def sizes(self) -> list[int]:
        return [len(leaves) for _, leaves in self.stars]


@dataclass(frozen=True)
class StarCoverSearch:
    """``status`` is "found", "proven-none" (exhaustive) or "unknown" (heuristic)."""

    cover: Optional[StarCover]
    status: str


def _exact_star_cover(g: Graph, min_size: int) -> Optional[StarCover]:
    n = g.n
    order = sorted(range(n), key=lambda v: (g.degree(v), v))
    role = [0] * n  # 0 unassigned, 1 centre, 2 leaf
    owner = [-1] * n
    nleaves = [0] * n
    centres: list[int] = []

    def feasible() -> bool:
        if len(centres) * (min_size + 1) > n:
            return False
        for c in centres:
            free = sum(1 for w in g.adj[c] if role[w] == 0)
            if nleaves[c] + free < min_size:
                return False
        for u in range(n):
            if role[u] == 0 and not any(role[w] != 2 for w in g.adj[u]):
                return False
        return True

    def make_leaf(u, c):
        role[u] = 2
        owner[u] = c
        nleaves[c] += 1

    def undo_leaf(u):
        nleaves[owner[u]] -= 1
        role[u] = 0
        owner[u] = -1

    def make_centre(c):
        role[c] = 1
        centres.append(c)

    def undo_centre(c):
        role[c] = 0
        centres.pop()

    def rec(i: int) -> bool:
        while i < n and role[order[i]] != 0:
            i += 1
        if i == n:
            return all(nleaves[c] >= min_size for c in centres)
        v = order[i]
        for c in g.adj[v]:
            if role[c] == 1:
                make_leaf(v, c)
                if feasible() and rec(i + 1):
                    return True
                undo_leaf(v)
        make_centre(v)
        if feasible() and rec(i + 1):
            return True
        undo_centre(v)
        for u in g.adj[v]:
            if role[u] == 0:
                make_centre(u)
                make_leaf(v, u)
                if feasible() and rec(i + 1):
                    return True
                undo_leaf(v)
                undo_centre(u)
        return False

    if n == 0 or not rec(0):
        return None
    stars = []
    for c in sorted(centres):
        stars.append((c, frozenset(u for u in range(n) if owner[u] == c)))
    return StarCover(tuple(stars))


def _greedy_star_cover(g: Graph, min_size: int) -> Optional[StarCover]:
    n = g.n
    owner = [-1] * n
    leaves: dict[int, set[int]] = {}
    while True:
        free = [v for v in range(n) if owner[v] == -1]
        best = None
        for v in free:
            cnt = sum(1 for w in g.adj[v] if owner[w] == -1)
            if cnt >= min_size and (best is None or cnt > best[0]):
                best = (cnt, v)
        if best is None:
            break
        c = best[1]
        owner[c] = c
        leaves[c] = {w for w in g.adj[c] if owner[w] == -1}
        for w in leaves[c]:
            owner[w] = c
    for v in range(n):
        if owner[v] != -1:
            continue
        host = [c for c in g.adj[v] if c in leaves]
        if host:
            c = min(host, key=lambda c: (len(leaves[c]), c))
            leaves[c].add(v)
            owner[v] = c
            continue
        # repair 1: promote a surplus leaf next to v into a centre of uncovered vertices
        promoted = False
        for w in g.adj[v]:
            c = owner[w]
            if c in leaves and w != c and len(leaves[c]) > min_size:
                free_nbrs = {x for x in g.adj[w] if owner[x] == -1}
                if len(free_nbrs) >= min_size:
                    leaves[c].discard(w)
                    owner[w] = w
                    leaves[w] = free_nbrs
                    for x in free_nbrs:
                        owner[x] = w
                    promoted = True
                    break
        if promoted:
            continue
        # repair 2: make v a centre by stealing surplus leaves of neighbouring stars
        mine = {w for w in g.adj[v] if owner[w] == -1}
        for w in g.adj[v]:
            c = owner[w]
            if len(mine) >= min_size:
                break
            if c in leaves and w != c and len(leaves[c]) > min_size:
                leaves[c].discard(w)
                mine.add(w)
        if len(mine) < min_size:
            return None
        owner[v] = v
        leaves[v] = mine
        for w in mine:
            owner[w] = v
    cover = StarCover(tuple((c, frozenset(ls)) for c, ls in sorted(leaves.items())))
    return cover if cover.validate(g, min_size) else None


def find_star_cover(g: Graph, min_size: int, exact_limit: int = 30) -> StarCoverSearch:
    """Star cover with every star of size at least ``min_size``.

    Exhaustive backtracking up to ``exact_limit`` vertices (a negative answer
    is then a proof); a greedy cover with leaf stealing beyond that.
    """
    if min_size < 1:
        raise PreconditionError("min_size must be at least 1")
    if g.n <= exact_limit:
        cover = _exact_star_cover(g, min_size)
        return StarCoverSearch(cover, "found" if cover else "proven-none")
    cover = _greedy_star_cover(g, min_size)
    return StarCoverSearch(cover, "found" if cover else "unknown")


# ---------------------------------------------------------------------------
# locally maximal bipartite subgraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteSubgraph:
    graph: Graph
    side: tuple[int, ...]

    def cut_size(self) -> int:
        return self.graph.m


def max_bipartite_local(g: Graph) -> BipartiteSubgraph:
    """Spanning connected bipartite subgraph H with ``d_H(v) >= d_G(v)/2``.

    Starts from the parity of a BFS layering (so H contains a BFS tree), then
    flips single vertices that keep fewer than half of their edges, and
    flips whole components of H when H falls apart. Every move strictly
    increases the number of cut edges.
    """
    if not is_connected(g):
        raise PreconditionError("max_bipartite_local requires a connected graph")
    n = g.n
    side = [0] * n
    if n:
        dist = [-1] * n
        dist[0] = 0
        queue = [0]
        for v in queue:
            for w in g.adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        side = [d % 2 for d in dist]

    def cut_edges():
        return [(u, v) for u, v in g.edges if side[u] != side[v]]

    while True:
        flipped = False
        for v in range(n):
            across = sum(1 for w in g.adj[v] if side[w] != side[v])
            if 2 * across < g.degree(v):
                side[v] ^= 1
                flipped = True
        if flipped:
            continue
        h = Graph.from_edges(n, cut_edges())
        comps = connected_components(h)
        if len(comps) <= 1:
            return BipartiteSubgraph(h, tuple(side))
        comp_of = {}
        for i, c in enumerate(comps):
            for v in c:
                comp_of[v] = i
        u, w = next((u, w) for u, w in g.edges if comp_of[u] != comp_of[w])
        for x in comps[comp_of[w]]:
            side[x] ^= 1


def bipartite_verdict(g: Graph, b: BipartiteSubgraph) -> Verdict:
    h = b.graph
    if h.n != g.n or any(e not in g.edge_set for e in h.edges):
        return Verdict(False, "not a spanning subgraph")
    if any(b.side[u] == b.side[v] for u, v in h.edges):
        return Verdict(False, "not bipartite")
    if not is_connected(h):
        return Verdict(False, "not connected")
    for v in range(g.n):
        if 2 * h.degree(v) < g.degree(v):
            return Verdict(False, f"vertex {v} keeps fewer than half its edges", v)
    return Verdict(True)


__all__ = [
    "BipartiteSubgraph", "KRail", "StarCover", "StarCoverSearch", "bipartite_verdict",
    "chordless_cycles", "component_of", "edge_key", "exchange_climb", "find_k_rail",
    "find_nonseparating_induced_cycle", "find_nonseparating_induced_path",
    "find_star_cover", "induced_paths", "induced_paths_by_length", "max_bipartite_local",
    "shortcut_to_induced",
]
