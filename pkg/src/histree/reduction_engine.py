"""Find a reducible structure in a graph of minimum degree at least 3.

Given ``g`` and a vertex set ``s`` containing every vertex of degree at least
4, :func:`find_structure` returns one of

* (C) an induced cycle avoiding ``s`` whose edge deletion keeps ``g`` connected,
* (P) an induced path with both ends in ``s`` whose edge deletion keeps ``g``
  connected,
* (W) a W_a or W_{a,b} configuration centred in ``s``,

by walking a fixed case tree. The branches that the underlying argument
rules out by minimality are checked, and reaching one raises
:class:`InternalBugError` with the trace so far.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .certificates import (
    StructureResult,
    WConfig,
    verify_cycle_condition,
    verify_structure,
)
from .errors import InternalBugError, PreconditionError
from .graph_core import (
    Graph,
    blocks_and_cutvertices,
    bridges,
    connected_components,
    induced_subgraph,
    is_connected,
    min_two_edge_cut_component,
    shortest_path,
)
from .structure_search import (
    exchange_climb,
    find_nonseparating_induced_cycle,
    induced_paths_by_length,
)

# parent label -> admissible child labels; labels without an entry are leaves
CASE_TREE: dict[str, tuple[str, ...]] = {
    "endblock": ("3ec", "2ec-cut"),
    "3ec": ("3ec.P", "3ec.C"),
    "2ec-cut": ("Case 1", "Case 2", "Case 3"),
    "Case 3": ("Case 3.1", "Case 3.2", "Case 3.3"),
    "Case 3.3": ("Case 3.3.C", "Case 3.3.1", "Case 3.3.2"),
    "Case 3.3.2": ("Case 3.3.2.C", "Case 3.3.2.1", "Case 3.3.2.2"),
    "Case 3.3.2.2": (
        "Case 3.3.2.2.triangle",
        "Case 3.3.2.2.C_P",
        "Case 3.3.2.2.C_w",
        "Case 3.3.2.2.C_u",
    ),
}


def is_valid_trace(trace) -> bool:
    """True when ``trace`` is a root-to-leaf walk of :data:`CASE_TREE`."""
    if not trace or trace[0] != "endblock":
        return False
    for parent, child in zip(trace, trace[1:]):
        if child not in CASE_TREE.get(parent, ()):
            return False
    return trace[-1] not in CASE_TREE


def case_tree_leaves() -> list[str]:
    kids = {c for cs in CASE_TREE.values() for c in cs}
    return sorted(k for k in kids if k not in CASE_TREE)


def _bug(msg: str, trace, state=None):
    return InternalBugError(msg, trace, state)


def _cycle_in_region(g: Graph, region: Iterable[int], forbidden: Iterable[int]):
    """Chordless cycle in g[region] avoiding ``forbidden`` whose vertex
    deletion keeps g[region] connected."""
    sub, idmap = induced_subgraph(g, region)
    forb = {idmap.new(v) for v in forbidden if v in idmap.to_new}
    cyc = find_nonseparating_induced_cycle(sub, forb, mode="vertex")
    # relabelling is order preserving, so the canonical form survives
    return None if cyc is None else tuple(idmap.old(c) for c in cyc)


def _attach_vertices(g: Graph, h: frozenset[int]) -> list[int]:
    return sorted(u for u in h if any(w not in h for w in g.adj[u]))


def _is_forest(g: Graph, verts: Iterable[int]) -> bool:
    sub, _ = induced_subgraph(g, verts)
    return sub.m == sub.n - len(connected_components(sub))


def case_332_path(g: Graph, h: Iterable[int], v: int, x: int, trace=()) -> tuple[int, ...]:
    """Induced ``v``-``x`` path P inside ``h`` with ``g - V(P)`` connected.

    Requires ``h - v`` to be 2-connected. The component of ``g - V(P)``
    containing ``g - h`` is grown by the subpath exchange; if the climb
    stalls, induced paths are enumerated by length as a fallback.
    """
    h = frozenset(h)
    if v not in h or x not in h or v == x:
        raise PreconditionError("v and x must be distinct vertices of h")
    rest = h - {v}
    sub, _ = induced_subgraph(g, rest)
    if not is_connected(sub) or len(blocks_and_cutvertices(sub).blocks) != 1 or sub.n < 3:
        raise PreconditionError("h - v must be 2-connected")
    anchor = [u for u in range(g.n) if u not in h]
    path, ok = exchange_climb(g, v, x, anchor=anchor, region=h, mode="vertex")
    if ok:
        return tuple(path)
    for cand in induced_paths_by_length(g, v, x, h):
        if is_connected(g, skip_vertices=cand):
            return cand
    raise _bug("no induced v-x path with connected complement", trace)


def _wa_from_tree(g: Graph, h: frozenset[int], v: int, trace) -> WConfig:
    rest = h - {v}
    sub, idmap = induced_subgraph(g, rest)
    ends = [idmap.old(i) for i in range(sub.n) if sub.degree(i) <= 1]
    if len(ends) != 2 or sub.max_degree() > 2:
        raise _bug("H - v is a tree but not a path", trace)
    x, y = sorted(ends)
    seq = shortest_path(g, x, y, allowed=rest)
    return WConfig("Wa", v, (x, y), tuple(seq[1:-1]))


def _wab_from_cycle(g: Graph, h: frozenset[int], v: int, x: int, y: int, u: int, trace) -> WConfig:
    rest = h - {v}
    if any(sum(1 for w in g.adj[a] if w in rest) != 2 for a in rest):
        raise _bug("H - v is not a cycle in Case 3.3.2.1", trace)
    seq = [x, u]
    while True:
        nxt = [w for w in g.adj[seq[-1]] if w in rest and w != seq[-2]]
        if nxt[0] == x:
            break
        seq.append(nxt[0])
    j = seq.index(y)
    path_p = tuple(seq[1:j])
    path_q = tuple(reversed(seq[j + 1:]))
    return WConfig("Wab", v, (x, y), path_p, path_q)


def _tree_path(g: Graph, verts: frozenset[int], a: int, b: int):
    return shortest_path(g, a, b, allowed=verts)


def _case_3322(g: Graph, s, h: frozenset[int], path: tuple[int, ...], x: int, y: int,
               trace: list[str]) -> StructureResult:
    trace.append("Case 3.3.2.2")
    tset = h - set(path)
    w, u = path[-2], path[-3]
    on_p = set(path)
    up = [a for a in g.adj[u] if a not in on_p]
    wp = [a for a in g.adj[w] if a not in on_p]
    if len(up) != 1 or len(wp) != 1 or up[0] not in tset or wp[0] not in tset:
        raise _bug("u or w lacks a unique neighbour off P", trace)
    u1, w1 = up[0], wp[0]

    def accept(label, cyc):
        if cyc is not None and verify_cycle_condition(g, s, cyc):
            trace.append(label)
            return StructureResult("C", cycle=tuple(cyc), trace=tuple(trace))
        return None

    if u1 == w1:
        r = accept("Case 3.3.2.2.triangle", (u, u1, w))
        if r:
            return r
        raise _bug("triangle uu'w fails (C)", trace)
    p_prime = _tree_path(g, tset, u1, w1)
    if p_prime is None:
        raise _bug("u' and w' not joined in T", trace)
    r = accept("Case 3.3.2.2.C_P", [u] + p_prime + [w])
    if r:
        return r
    zs = [a for a in g.adj[x] if a in tset]
    if len(zs) != 1:
        raise _bug("x has no unique neighbour in T", trace)
    z = zs[0]
    to_w = _tree_path(g, tset, z, w1)
    if to_w is not None:
        r = accept("Case 3.3.2.2.C_w", [x] + to_w + [w])
        if r:
            return r
    to_u = _tree_path(g, tset, z, u1)
    if to_u is not None:
        r = accept("Case 3.3.2.2.C_u", [x] + to_u + [u, w])
        if r:
            return r
    raise _bug("C_P, C_w and C_u all fail; H - x - y - w - z would be a smaller 2-edge-cut side",
               trace)


def _case_3(g: Graph, s, h: frozenset[int], v: int, trace: list[str]) -> StructureResult:
    trace.append("Case 3")
    rest = h - {v}
    if not is_connected(induced_subgraph(g, rest)[0]):
        trace.append("Case 3.1")
        attach = set(_attach_vertices(g, h))
        hsub, hmap = induced_subgraph(g, h)
        bd = blocks_and_cutvertices(hsub)
        for blk in bd.blocks:
            bverts = frozenset(hmap.old(i) for i in blk)
            if len(bverts & attach) <= 1:
                cyc = _cycle_in_region(g, bverts, [v])
                if cyc is not None:
                    return StructureResult("C", cycle=cyc, trace=tuple(trace))
        raise _bug("no block of H with at most one attachment yields a cycle", trace)
    if _is_forest(g, rest):
        trace.append("Case 3.2")
        return StructureResult("W", config=_wa_from_tree(g, h, v, trace), trace=tuple(trace))
    trace.append("Case 3.3")
    cyc = _cycle_in_region(g, h, [v])
    if cyc is None:
        raise _bug("no non-separating induced cycle in H avoiding v", trace)
    if verify_cycle_condition(g, s, cyc):
        trace.append("Case 3.3.C")
        return StructureResult("C", cycle=cyc, trace=tuple(trace))
    attach = _attach_vertices(g, h)
    if len(attach) < 2:
        raise _bug("only one vertex of H has outside neighbours", trace)
    x, y = attach[0], attach[-1]
    if len(attach) != 2 or not (set(attach) <= set(cyc)):
        raise _bug("cycle misses an attachment vertex yet fails (C)", trace)
    if g.has_edge(x, y):
        raise _bug("connectors adjacent; H - x - y would be a smaller cut side", trace)

    rsub, rmap = induced_subgraph(g, rest)
    rbd = blocks_and_cutvertices(rsub)
    if rbd.cutvertices:
        trace.append("Case 3.3.1")
        wv = min(rmap.old(c) for c in rbd.cutvertices)
        rbr = sorted(rmap.old_edges(bridges(rsub)))
        cands = [e for e in rbr if wv in e]
        if not cands:
            raise _bug("cut vertex of H - v without an incident bridge", trace)
        e = cands[0]
        hsub, hmap = induced_subgraph(g, h)
        he = hsub.without_edges(hmap.new_edges([e]))
        if not is_connected(he):
            raise _bug("H - e disconnected", trace)
        bd = blocks_and_cutvertices(he)
        cutv = {hmap.old(c) for c in bd.cutvertices}
        if cutv != {v} or len(bd.blocks) != 2:
            raise _bug("H - e has a cut vertex other than v; e and e' would form a smaller cut",
                       trace)
        for blk in bd.blocks:
            bverts = frozenset(hmap.old(i) for i in blk)
            if x in bverts or y in bverts:
                continue
            cyc = _cycle_in_region(g, bverts, [v])
            if cyc is not None and verify_cycle_condition(g, s, cyc):
                return StructureResult("C", cycle=cyc, trace=tuple(trace))
        raise _bug("block of H - e away from x, y yields no cycle", trace)

    trace.append("Case 3.3.2")
    path = case_332_path(g, h, v, x, trace)
    if y in path:
        raise _bug("path from v to x passes through y", trace)
    tset = h - set(path)
    if not _is_forest(g, tset):
        cyc = _cycle_in_region(g, h, path)
        if cyc is None or not verify_cycle_condition(g, s, cyc):
            raise _bug("H - V(P) has a cycle but no qualifying one", trace)
        trace.append("Case 3.3.2.C")
        return StructureResult("C", cycle=cyc, trace=tuple(trace))
    if len(path) - 1 <= 2:
        trace.append("Case 3.3.2.1")
        if len(path) != 3:
            raise _bug("v adjacent to x in Case 3.3.2.1", trace)
        cfg = _wab_from_cycle(g, h, v, x, y, path[1], trace)
        return StructureResult("W", config=cfg, trace=tuple(trace))
    return _case_3322(g, s, h, path, x, y, trace)


def _check_input(g: Graph, s: frozenset[int]) -> None:
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("find_structure requires a non-empty connected graph")
    if g.min_degree() < 3:
        raise PreconditionError("find_structure requires minimum degree at least 3")
    if any(not 0 <= v < g.n for v in s):
        raise PreconditionError("S contains an id outside the graph")
    missing = [v for v in range(g.n) if g.degree(v) >= 4 and v not in s]
    if missing:
        raise PreconditionError(f"S must contain every vertex of degree >= 4; missing {missing}")


def _find(g: Graph, s: frozenset[int], trace: list[str]) -> StructureResult:
    trace.append("endblock")
    bd = blocks_and_cutvertices(g)
    block = bd.endblocks()[0]
    cut_in_b = sorted(block & bd.cutvertices)
    b: Optional[int] = cut_in_b[0] if cut_in_b else None
    cut = min_two_edge_cut_component(g, block, avoid=b)

    if cut is None:
        trace.append("3ec")
        sb = sorted(block & s)
        if len(sb) >= 2:
            sub, idmap = induced_subgraph(g, block)
            path, ok = exchange_climb(sub, idmap.new(sb[0]), idmap.new(sb[1]), mode="edge")
            if not ok:
                raise _bug("exchange search stalled on a 3-edge-connected block", trace)
            trace.append("3ec.P")
            return StructureResult("P", path=tuple(idmap.old(p) for p in path), trace=tuple(trace))
        v = sb[0] if sb else min(block)
        cyc = _cycle_in_region(g, block, [v])
        if cyc is None:
            raise _bug("no non-separating induced cycle in the endblock", trace)
        trace.append("3ec.C")
        return StructureResult("C", cycle=cyc, trace=tuple(trace))

    trace.append("2ec-cut")
    h = cut.component
    sh = sorted(h & s)
    if not sh:
        trace.append("Case 1")
        hsub, _ = induced_subgraph(g, h)
        if hsub.n < 3 or len(blocks_and_cutvertices(hsub).blocks) != 1:
            raise _bug("H without S-vertices is not 2-connected", trace)
        x = _attach_vertices(g, h)[0]
        cyc = _cycle_in_region(g, h, [x])
        if cyc is None:
            raise _bug("no non-separating induced cycle in H avoiding x", trace)
        return StructureResult("C", cycle=cyc, trace=tuple(trace))
    if len(sh) >= 2:
        trace.append("Case 2")
        anchor = [u for u in range(g.n) if u not in h]
        path, ok = exchange_climb(g, sh[0], sh[1], anchor=anchor, region=h, mode="edge")
        if not ok:
            raise _bug("exchange search stalled inside a minimal cut side", trace)
        return StructureResult("P", path=tuple(path), trace=tuple(trace))
    return _case_3(g, s, h, sh[0], trace)


def find_structure(g: Graph, s: Iterable[int]) -> StructureResult:
    """Return a verified (C), (P) or (W) structure for ``g`` and ``s``."""
    s = frozenset(s)
    _check_input(g, s)
    trace: list[str] = []
    result = _find(g, s, trace)
    verdict = verify_structure(g, s, result)
    if not verdict:
        raise _bug(f"structure rejected by its certificate: {verdict.reason}", result.trace,
                   result)
    return result


__all__ = [
    "CASE_TREE", "StructureResult", "case_332_path", "case_tree_leaves", "find_structure",
    "is_valid_trace",
]
