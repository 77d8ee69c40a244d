"""Decidable checks for every property the constructions promise.

Verifiers never trust how an object was produced: each one re-derives the
property from the host graph. Failures name the first violated clause, in the
order listed in the ``*_CLAUSES`` constants.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import GraphError
from .graph_core import Edge, Graph, Tree, edge_key, is_connected


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check. Truthy iff ``ok``."""

    ok: bool
    reason: Optional[str] = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class BadPathWitness:
    vertices: tuple[int, int, int]


@dataclass(frozen=True)
class WConfig:
    """A W_a (``kind="Wa"``) or W_{a,b} (``kind="Wab"``) configuration."""

    kind: str
    centre: int
    connectors: tuple[int, int]
    path_p: tuple[int, ...]
    path_q: Optional[tuple[int, ...]] = None

    def vertices(self) -> frozenset[int]:
        vs = {self.centre, *self.connectors, *self.path_p}
        if self.path_q:
            vs.update(self.path_q)
        return frozenset(vs)

    def prescribed_edges(self) -> set[Edge]:
        v = self.centre
        x, y = self.connectors
        es: set[Edge] = set()
        paths = [self.path_p] + ([self.path_q] if self.kind == "Wab" and self.path_q else [])
        for p in paths:
            for a, b in zip(p, p[1:]):
                es.add(edge_key(a, b))
            for u in p:
                es.add(edge_key(v, u))
            es.add(edge_key(x, p[0]))
            es.add(edge_key(y, p[-1]))
        if self.kind == "Wa":
            es.add(edge_key(v, x))
            es.add(edge_key(v, y))
        return es


@dataclass(frozen=True)
class StructureResult:
    """One of the three outcomes (C), (P), (W) with the case trace that led to it."""

    variant: str
    cycle: Optional[tuple[int, ...]] = None
    path: Optional[tuple[int, ...]] = None
    config: Optional[WConfig] = None
    trace: tuple[str, ...] = ()


TreeLike = Union[Tree, Iterable[Sequence[int]]]


def _edges_of(h: TreeLike) -> frozenset[Edge]:
    if isinstance(h, Tree):
        return h.edges
    return frozenset(edge_key(*e) for e in h)


def _degrees(n: int, edges: Iterable[Edge]) -> list[int]:
    deg = [0] * n
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    return deg


# ---------------------------------------------------------------------------
# bad paths / tree degree properties
# ---------------------------------------------------------------------------

def find_bad_path(g: Graph, h: TreeLike) -> Optional[BadPathWitness]:
    """A G-bad path of ``h``: three consecutive vertices of degree 2 in ``h``
    and degree at least 3 in ``g``. None certifies that ``h`` is G-good."""
    edges = _edges_of(h)
    for e in edges:
        if e not in g.edge_set:
            raise GraphError(f"edge {e} of h is not an edge of g")
    deg = _degrees(g.n, edges)
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)

    def heavy2(x):
        return deg[x] == 2 and g.degree(x) >= 3

    for q in range(g.n):
        if not heavy2(q):
            continue
        p, r = sorted(nbrs[q])
        if heavy2(p) and heavy2(r):
            return BadPathWitness((p, q, r))
    return None


def is_good(g: Graph, h: TreeLike) -> bool:
    return find_bad_path(g, h) is None


def degree2_independent(t: TreeLike) -> Verdict:
    """True iff no edge of ``t`` joins two vertices of degree 2 in ``t``."""
    edges = _edges_of(t)
    n = 1 + max((v for e in edges for v in e), default=-1)
    deg = _degrees(n, edges)
    for u, v in sorted(edges):
        if deg[u] == 2 and deg[v] == 2:
            return Verdict(False, "adjacent degree-2 vertices", (u, v))
    return Verdict(True)


def has_three_consecutive_deg2(t: TreeLike) -> bool:
    """True when ``t`` contains a path on three vertices all of degree 2."""
    edges = _edges_of(t)
    n = 1 + max((v for e in edges for v in e), default=-1)
    deg = _degrees(n, edges)
    count = [0] * n
    for u, v in edges:
        if deg[u] == 2 and deg[v] == 2:
            count[u] += 1
            count[v] += 1
    return any(c == 2 for c in count)


def tree_degree_multiset(t: TreeLike) -> dict[int, int]:
    """Histogram ``degree -> number of vertices`` of a spanning tree."""
    if isinstance(t, Tree):
        degs = t.degrees
        if t.host.n == 1:
            return {0: 1}
    else:
        edges = _edges_of(t)
        n = 1 + max((v for e in edges for v in e), default=-1)
        degs = _degrees(n, edges)
    return dict(sorted(Counter(degs).items()))


# ---------------------------------------------------------------------------
# W-configurations
# ---------------------------------------------------------------------------

W_CLAUSES = (
    "distinct-vertices",
    "shape",
    "centre-adjacency",
    "path-edges",
    "induced",
    "connector-outside",
    "no-other-outside",
    "outside-connected",
    "degree-3",
)


def verify_w_configuration(g: Graph, c: WConfig) -> Verdict:
    """Check every clause of the W_a / W_{a,b} definition against ``g``.

    Clauses are tested in ``W_CLAUSES`` order and the first failure is named
    in ``reason``.
    """
    listed = [c.centre, *c.connectors, *c.path_p, *(c.path_q or ())]
    if (not c.path_p or len(set(listed)) != len(listed)
            or any(not 0 <= v < g.n for v in listed)):
        return Verdict(False, "distinct-vertices")
    if c.kind == "Wa":
        if c.path_q:
            return Verdict(False, "shape")
    elif c.kind == "Wab":
        if not c.path_q:
            return Verdict(False, "shape")
    else:
        return Verdict(False, "shape")
    v = c.centre
    x, y = c.connectors
    dominated = list(c.path_p) + list(c.path_q or ())
    if c.kind == "Wa":
        dominated += [x, y]
    if any(not g.has_edge(v, u) for u in dominated):
        return Verdict(False, "centre-adjacency")
    paths = [c.path_p] + ([c.path_q] if c.kind == "Wab" else [])
    for p in paths:
        if any(not g.has_edge(a, b) for a, b in zip(p, p[1:])):
            return Verdict(False, "path-edges")
        if not g.has_edge(x, p[0]) or not g.has_edge(y, p[-1]):
            return Verdict(False, "path-edges")
    hv = c.vertices()
    actual = {edge_key(a, b) for a in hv for b in g.neighbors(a) if b in hv}
    if actual != c.prescribed_edges():
        return Verdict(False, "induced")
    for conn in (x, y):
        if sum(1 for w in g.neighbors(conn) if w not in hv) != 1:
            return Verdict(False, "connector-outside")
    for u in hv - {x, y}:
        if any(w not in hv for w in g.neighbors(u)):
            return Verdict(False, "no-other-outside")
    if len(hv) == g.n or not is_connected(g, skip_vertices=hv):
        return Verdict(False, "outside-connected")
    if any(g.degree(u) != 3 for u in hv - {v}):
        return Verdict(False, "degree-3")
    return Verdict(True)


# ---------------------------------------------------------------------------
# (C) / (P) / (W) structures
# ---------------------------------------------------------------------------

STRUCTURE_CLAUSES = {
    "C": ("cycle-shape", "cycle-induced", "cycle-avoids-S", "cycle-nonseparating"),
    "P": ("path-shape", "path-induced", "path-endpoints-in-S", "path-nonseparating"),
    "W": W_CLAUSES + ("centre-in-S",),
}


def is_induced_cycle(g: Graph, cyc: Sequence[int]) -> Verdict:
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k or any(not 0 <= v < g.n for v in cyc):
        return Verdict(False, "cycle-shape")
    if any(not g.has_edge(cyc[i], cyc[(i + 1) % k]) for i in range(k)):
        return Verdict(False, "cycle-shape")
    members = set(cyc)
    for v in cyc:
        if sum(1 for w in g.neighbors(v) if w in members) != 2:
            return Verdict(False, "cycle-induced")
    return Verdict(True)


def is_induced_path(g: Graph, path: Sequence[int]) -> Verdict:
    k = len(path)
    if k < 2 or len(set(path)) != k or any(not 0 <= v < g.n for v in path):
        return Verdict(False, "path-shape")
    if any(not g.has_edge(a, b) for a, b in zip(path, path[1:])):
        return Verdict(False, "path-shape")
    pos = {v: i for i, v in enumerate(path)}
    for i, v in enumerate(path):
        for w in g.neighbors(v):
            j = pos.get(w)
            if j is not None and abs(i - j) != 1:
                return Verdict(False, "path-induced")
    return Verdict(True)


def cycle_edges(cyc: Sequence[int]) -> list[Edge]:
    return [edge_key(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


def path_edges(path: Sequence[int]) -> list[Edge]:
    return [edge_key(a, b) for a, b in zip(path, path[1:])]


def verify_cycle_condition(g: Graph, s: Iterable[int], cyc: Sequence[int]) -> Verdict:
    v = is_induced_cycle(g, cyc)
    if not v:
        return v
    if set(cyc) & set(s):
        return Verdict(False, "cycle-avoids-S")
    if not is_connected(g, skip_edges=cycle_edges(cyc)):
        return Verdict(False, "cycle-nonseparating")
    return Verdict(True)


def verify_path_condition(g: Graph, s: Iterable[int], path: Sequence[int]) -> Verdict:
    v = is_induced_path(g, path)
    if not v:
        return v
    sset = set(s)
    if path[0] not in sset or path[-1] not in sset:
        return Verdict(False, "path-endpoints-in-S")
    if not is_connected(g, skip_edges=path_edges(path)):
        return Verdict(False, "path-nonseparating")
    return Verdict(True)


def verify_structure(g: Graph, s: Iterable[int], r: StructureResult) -> Verdict:
    """Check a (C), (P) or (W) outcome against ``g`` and the set ``s``."""
    s = frozenset(s)
    if r.variant == "C":
        if r.cycle is None:
            return Verdict(False, "cycle-shape")
        return verify_cycle_condition(g, s, r.cycle)
    if r.variant == "P":
        if r.path is None:
            return Verdict(False, "path-shape")
        return verify_path_condition(g, s, r.path)
    if r.variant == "W":
        if r.config is None:
            return Verdict(False, "distinct-vertices")
        v = verify_w_configuration(g, r.config)
        if not v:
            return v
        if r.config.centre not in s:
            return Verdict(False, "centre-in-S")
        return Verdict(True)
    return Verdict(False, f"unknown variant {r.variant!r}")


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------
#
# Machine-readable reports are plain dicts with these stable keys:
#   tree:      {"edges": [[u, v], ...], "degree_histogram": {"d": count}}
#   structure: {"variant": "C"|"P"|"W", "cycle"|"path": [...],
#               "config": {...}, "trace": [...]}
#   verdict:   {"ok": bool, "reason": str|null, "witness": any}

def tree_record(t: TreeLike) -> dict:
    edges = sorted(_edges_of(t))
    return {
        "edges": [list(e) for e in edges],
        "degree_histogram": {str(k): v for k, v in tree_degree_multiset(t).items()},
    }


def config_record(c: WConfig) -> dict:
    return {
        "kind": c.kind,
        "centre": c.centre,
        "connectors": list(c.connectors),
        "path_p": list(c.path_p),
        "path_q": None if c.path_q is None else list(c.path_q),
    }


def config_from_record(rec: dict) -> WConfig:
    q = rec.get("path_q")
    return WConfig(rec["kind"], int(rec["centre"]), tuple(rec["connectors"]),
                   tuple(rec["path_p"]), None if q is None else tuple(q))


def structure_record(r: StructureResult) -> dict:
    rec: dict = {"variant": r.variant, "trace": list(r.trace)}
    if r.cycle is not None:
        rec["cycle"] = list(r.cycle)
    if r.path is not None:
        rec["path"] = list(r.path)
    if r.config is not None:
        rec["config"] = config_record(r.config)
    return rec


def verdict_record(v: Verdict) -> dict:
    w = v.witness
    if isinstance(w, BadPathWitness):
        w = list(w.vertices)
    elif isinstance(w, tuple):
        w = list(w)
    return {"ok": v.ok, "reason": v.reason, "witness": w}


def format_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2)


def format_text(report: dict) -> str:
    """Flatten a report into ``dotted.key: value`` lines."""
    lines: list[str] = []

    def walk(prefix, obj):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(f"{prefix}.{k}" if prefix else str(k), obj[k])
        elif isinstance(obj, list) and obj and all(isinstance(x, (list, dict)) for x in obj):
            if all(isinstance(x, list) for x in obj):
                lines.append(f"{prefix}: " + " ".join("-".join(map(str, x)) for x in obj))
            else:
                for i, x in enumerate(obj):
                    walk(f"{prefix}[{i}]", x)
        elif isinstance(obj, list):
            lines.append(f"{prefix}: " + " ".join(map(str, obj)))
        else:
            val = obj
            if isinstance(obj, bool):
                val = "true" if obj else "false"
            elif obj is None:
                val = "none"
            lines.append(f"{prefix}: {val}")

    walk("", report)
    return "\n".join(lines) + "\n"
