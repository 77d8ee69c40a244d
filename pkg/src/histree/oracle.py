"""Brute-force ground truth over spanning trees.

Exhaustive enumeration, quantified predicate checks with three-valued
verdicts, an exact Matrix-Tree count and a uniform sampler for graphs too
large to enumerate.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .certificates import find_bad_path
from .errors import PreconditionError
from .graph_core import Edge, Graph, Tree, blocks_and_cutvertices, is_connected

TreeEdges = tuple  # sorted tuple of edges


@dataclass(frozen=True)
class EnumerationBudget:
    max_trees: Optional[int] = None
    max_seconds: Optional[float] = None

    def __post_init__(self):
        if self.max_trees is not None and self.max_trees <= 0:
            raise PreconditionError("max_trees must be positive")
        if self.max_seconds is not None and self.max_seconds <= 0:
            raise PreconditionError("max_seconds must be positive")


UNLIMITED = EnumerationBudget()


@dataclass(frozen=True)
class EnumerationResult:
    """``status``: "completed", "truncated" (budget hit) or "stopped" (by the visitor)."""

    status: str
    count: int

    @property
    def completed(self) -> bool:
        return self.status == "completed"


class _Halt(Exception):
    pass


def _block_trees(n: int, edges: Sequence[Edge], emit: Callable[[list], None]) -> None:
    """Call ``emit`` with the edge list of every spanning tree of the connected
    graph on the vertices of ``edges``.

    Branch and bound over ``edges`` in the given order, include first. A
    union-find with rollback tracks the partial forest; an edge may only be
    excluded when the remaining candidate edges still connect its ends.
    """
    verts = sorted({v for e in edges for v in e})
    need = len(verts) - 1
    if need <= 0:
        emit([])
        return
    parent = {v: v for v in verts}
    size = {v: 1 for v in verts}
    history: list = []
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in verts}
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    alive = [True] * len(edges)
    chosen: list[Edge] = []

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def union(a, b):
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
        history.append((a, b))

    def rollback():
        a, b = history.pop()
        parent[b] = b
        size[a] -= size[b]

    def still_linked(u, v, skip):
        seen = {u}
        todo = [u]
        while todo:
            x = todo.pop()
            for y, i in adj[x]:
                if i == skip or not alive[i] or y in seen:
                    continue
                if y == v:
                    return True
                seen.add(y)
                todo.append(y)
        return False

    def rec(i):
        if len(chosen) == need:
            emit(chosen)
            return
        if i == len(edges):
            return
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru != rv:
            union(ru, rv)
            chosen.append(edges[i])
            rec(i + 1)
            chosen.pop()
            rollback()
            if not still_linked(u, v, i):
                return
        alive[i] = False
        rec(i + 1)
        alive[i] = True

    rec(0)


def for_each_spanning_tree(g: Graph, visitor: Optional[Callable[[TreeEdges], object]] = None,
                           budget: EnumerationBudget = UNLIMITED) -> EnumerationResult:
    """Visit every spanning tree of ``g`` exactly once.

    Spanning trees factor over blocks, so each block is enumerated on its own
    and the results are combined as a product: the largest block streams in
    the outer loop, the other blocks' tree lists are iterated inside it.
    The visitor receives a sorted tuple of edges and stops the run by
    returning True.
    """
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    start = time.monotonic()
    count = 0
    status = "completed"
    if g.n <= 1:
        if visitor is not None and visitor(()):
            return EnumerationResult("stopped", 1)
        return EnumerationResult("completed", 1)
    edge_set = g.edge_set
    block_edges = []
    for b in blocks_and_cutvertices(g).blocks:
        bs = sorted(b)
        block_edges.append([(u, v) for i, u in enumerate(bs) for v in bs[i + 1:]
                            if (u, v) in edge_set])
    outer = max(range(len(block_edges)), key=lambda i: (len(block_edges[i]), -i))
    inner_lists = []
    for i, es in enumerate(block_edges):
        if i == outer:
            continue
        trees: list = []
        _block_trees(g.n, es, lambda t: trees.append(tuple(t)))
        inner_lists.append(trees)

    def check_budget():
        nonlocal status
        if budget.max_trees is not None and count >= budget.max_trees:
            status = "truncated"
            raise _Halt
        if budget.max_seconds is not None and count % 256 == 0 \
                and time.monotonic() - start > budget.max_seconds:
            status = "truncated"
            raise _Halt

    def emit_product(outer_tree):
        nonlocal count, status

        def rec(k, acc):
            nonlocal count, status
            if k == len(inner_lists):
                check_budget()
                count += 1
                if visitor is not None and visitor(tuple(sorted(acc))):
                    status = "stopped"
                    raise _Halt
                return
            for t in inner_lists[k]:
                rec(k + 1, acc + list(t))

        rec(0, list(outer_tree))

    try:
        _block_trees(g.n, block_edges[outer], emit_product)
    except _Halt:
        pass
    return EnumerationResult(status, count)


def list_spanning_trees(g: Graph, budget: EnumerationBudget = UNLIMITED) -> list[TreeEdges]:
    out: list = []
    for_each_spanning_tree(g, lambda t: out.append(t), budget)
    return out


# ---------------------------------------------------------------------------
# Matrix-Tree count
# ---------------------------------------------------------------------------

def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees(g: Graph) -> int:
    """Number of spanning trees: a Laplacian cofactor, by fraction-free elimination."""
    if g.n <= 1:
        return 1
    lap = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    minor = [row[1:] for row in lap[1:]]
    return _bareiss_det(minor)


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def sample_spanning_tree(g: Graph, rng: random.Random) -> TreeEdges:
    """Uniformly random spanning tree (Wilson's loop-erased random walks)."""
    if not is_connected(g):
        raise PreconditionError("graph must be connected")
    n = g.n
    in_tree = [False] * n
    nxt = [-1] * n
    root = rng.randrange(n)
    in_tree[root] = True
    for start in range(n):
        u = start
        while not in_tree[u]:
            nxt[u] = rng.choice(g.adj[u])
            u = nxt[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            u = nxt[u]
    return tuple(sorted((min(v, nxt[v]), max(v, nxt[v])) for v in range(n) if v != root))


# ---------------------------------------------------------------------------
# predicates and quantified checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Predicate:
    name: str
    test: Callable[[Graph, TreeEdges], bool]

    def __call__(self, g: Graph, t) -> bool:
        return bool(self.test(g, t))


def _degs(n: int, edges) -> list[int]:
    d = [0] * n
    for u, v in edges:
        d[u] += 1
        d[v] += 1
    return d


def _adjacent_deg2(g, t):
    d = _degs(g.n, t)
    return any(d[u] == 2 and d[v] == 2 for u, v in t)


def _three_deg2(g, t):
    d = _degs(g.n, t)
    c = [0] * g.n
    for u, v in t:
        if d[u] == 2 and d[v] == 2:
            c[u] += 1
            c[v] += 1
    return 2 in c


def _has_degrees(wanted):
    def test(g, t):
        present = set(_degs(g.n, t))
        return all(k in present for k in wanted)
    return test


PREDICATES = {
    "adjacent-deg2-pair": "some edge joins two vertices of tree degree 2",
    "deg2-independent": "no edge joins two vertices of tree degree 2",
    "no-three-consecutive-deg2": "no path on three vertices of tree degree 2",
    "g-good": "no path on three vertices of tree degree 2 and graph degree >= 3",
    "has-degrees:D1,D2,...": "every listed tree degree occurs",
}


def get_predicate(spec: str) -> Predicate:
    """Predicate by name; ``not:NAME`` negates."""
    spec = spec.strip()
    if spec.startswith("not:"):
        inner = get_predicate(spec[4:])
        return Predicate(spec, lambda g, t: not inner.test(g, t))
    if spec == "adjacent-deg2-pair":
        return Predicate(spec, _adjacent_deg2)
    if spec == "deg2-independent":
        return Predicate(spec, lambda g, t: not _adjacent_deg2(g, t))
    if spec == "no-three-consecutive-deg2":
        return Predicate(spec, lambda g, t: not _three_deg2(g, t))
    if spec == "g-good":
        return Predicate(spec, lambda g, t: find_bad_path(g, t) is None)
    if spec.startswith("has-degrees:"):
        try:
            wanted = tuple(int(x) for x in spec.split(":", 1)[1].split(",") if x.strip())
        except ValueError:
            raise PreconditionError(f"bad degree list in {spec!r}") from None
        if not wanted:
            raise PreconditionError("has-degrees needs at least one degree")
        return Predicate(spec, _has_degrees(wanted))
    raise PreconditionError(f"unknown predicate {spec!r}; known: {', '.join(PREDICATES)}")


@dataclass(frozen=True)
class QuantifiedVerdict:
    """``verdict`` is "true", "false" or "unknown"; ``witness`` is the
    counterexample (universal) or the example (existential)."""

    verdict: str
    count: int
    status: str
    witness: Optional[TreeEdges] = None


def _as_pred(pred) -> Predicate:
    return get_predicate(pred) if isinstance(pred, str) else pred


def all_trees_satisfy(g: Graph, pred, budget: EnumerationBudget = UNLIMITED) -> QuantifiedVerdict:
    p = _as_pred(pred)
    bad: list = []

    def visit(t):
        if not p.test(g, t):
            bad.append(t)
            return True
        return False

    res = for_each_spanning_tree(g, visit, budget)
    if bad:
        Tree(g, bad[0])
        return QuantifiedVerdict("false", res.count, res.status, bad[0])
    if res.completed:
        return QuantifiedVerdict("true", res.count, res.status)
    return QuantifiedVerdict("unknown", res.count, res.status)


def exists_tree_satisfying(g: Graph, pred,
                           budget: EnumerationBudget = UNLIMITED) -> QuantifiedVerdict:
    p = _as_pred(pred)
    found: list = []

    def visit(t):
        if p.test(g, t):
            found.append(t)
            return True
        return False

    res = for_each_spanning_tree(g, visit, budget)
    if found:
        witness = found[0]
        if not (Tree(g, witness).is_spanning and p.test(g, witness)):
            raise AssertionError("witness failed re-verification")
        return QuantifiedVerdict("true", res.count, res.status, witness)
    if res.completed:
        return QuantifiedVerdict("false", res.count, res.status)
    return QuantifiedVerdict("unknown", res.count, res.status)


@dataclass(frozen=True)
class SampleVerdict:
    """Sampled evidence only: "false" is a proof, "no-counterexample" is not."""

    verdict: str
    samples: int
    counterexample: Optional[TreeEdges] = None


def sample_trees_satisfy(g: Graph, pred, samples: int, seed: int = 0) -> SampleVerdict:
    p = _as_pred(pred)
    rng = random.Random(seed)
    for i in range(samples):
        t = sample_spanning_tree(g, rng)
        if not p.test(g, t):
            return SampleVerdict("false", i + 1, t)
    return SampleVerdict("no-counterexample", samples)


__all__ = [
    "EnumerationBudget", "EnumerationResult", "PREDICATES", "Predicate", "QuantifiedVerdict",
    "SampleVerdict", "UNLIMITED", "all_trees_satisfy", "count_spanning_trees",
    "exists_tree_satisfying", "for_each_spanning_tree", "get_predicate", "list_spanning_trees",
    "sample_spanning_tree", "sample_trees_satisfy",
]
