"""graph6 and plain edge-list readers/writers.

Edge-list files hold one ``u v`` pair per line (0-indexed). Blank lines are
ignored and ``#`` starts a comment. Comment lines of the form ``# key: value``
carry optional metadata understood by this package:

``# vertices: N``       vertex count (otherwise ``max id + 1``)
``# star: c l1 l2 ...`` one star of an embedded star cover, centre first
``# centre: v``         a W-configuration centre (for ``--s auto+centres``)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import GraphError
from .graph_core import Edge, Graph, edge_key

GRAPH6_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n < 0:
        raise GraphError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def _decode_n(data: str) -> tuple[int, int]:
    def val(ch):
        x = ord(ch) - 63
        if not 0 <= x <= 63:
            raise GraphError(f"invalid graph6 character {ch!r}")
        return x

    if not data:
        raise GraphError("empty graph6 string")
    if data[0] != "~":
        return val(data[0]), 1
    if len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise GraphError("truncated graph6 size field")
        n = 0
        for ch in data[2:8]:
            n = (n << 6) | val(ch)
        return n, 8
    if len(data) < 4:
        raise GraphError("truncated graph6 size field")
    n = 0
    for ch in data[1:4]:
        n = (n << 6) | val(ch)
    return n, 4


def to_graph6(g: Graph) -> str:
    """graph6 string (no header, no newline)."""
    bits = []
    for j in range(1, g.n):
        nbrs = g.neighbor_set(j)
        for i in range(j):
            bits.append(1 if i in nbrs else 0)
    while len(bits) % 6:
        bits.append(0)
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = (x << 1) | b
        body.append(chr(x + 63))
    return _encode_n(g.n) + "".join(body)


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    n, offset = _decode_n(s)
    need = n * (n - 1) // 2
    body = s[offset:]
    if len(body) != (need + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} chars, expected {(need + 5) // 6}")
    bits = []
    for ch in body:
        x = ord(ch) - 63
        if not 0 <= x <= 63:
            raise GraphError(f"invalid graph6 character {ch!r}")
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


@dataclass
class EdgeListData:
    graph: Graph
    stars: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    centres: list[int] = field(default_factory=list)


def parse_edge_list(text: str, n: Optional[int] = None) -> EdgeListData:
    edges: list[Edge] = []
    stars = []
    centres = []
    declared = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition(":")
            if not sep:
                continue
            key = key.strip().lower()
            try:
                nums = [int(x) for x in value.split()]
            except ValueError:
                continue
            if key == "vertices" and len(nums) == 1:
                declared = nums[0]
            elif key == "star" and nums:
                stars.append((nums[0], tuple(nums[1:])))
            elif key == "centre" and len(nums) == 1:
                centres.append(nums[0])
            continue
        line = line.split("#", 1)[0]
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex id in {raw!r}") from None
        if u < 0 or v < 0:
            raise GraphError(f"line {lineno}: negative vertex id")
        edges.append((u, v))
    if n is None:
        n = declared
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return EdgeListData(Graph.from_edges(n, edges), stars, centres)


def format_edge_list(g: Graph, edges: Optional[Iterable[Edge]] = None, *,
                     stars=None, centres=None) -> str:
    """Edge-list text for ``g`` (or for a sub-edge-set of it, e.g. a tree)."""
    lines = [f"# vertices: {g.n}"]
    for centre, leaves in stars or ():
        lines.append("# star: " + " ".join(str(x) for x in (centre, *sorted(leaves))))
    for c in centres or ():
        lines.append(f"# centre: {c}")
    chosen = g.edges if edges is None else sorted(edge_key(*e) for e in edges)
    lines.extend(f"{u} {v}" for u, v in chosen)
    return "\n".join(lines) + "\n"


def detect_format(path: str) -> str:
    p = str(path).lower()
    if p.endswith((".g6", ".graph6")):
        return "g6"
    return "el"


def read_graph_file(path, fmt: Optional[str] = None) -> EdgeListData:
    text = Path(path).read_text()
    fmt = fmt or detect_format(str(path))
    if fmt == "g6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise GraphError(f"{path}: expected exactly one graph6 line, got {len(lines)}")
        return EdgeListData(from_graph6(lines[0]))
    if fmt == "el":
        return parse_edge_list(text)
    raise GraphError(f"unknown format {fmt!r}")


def write_graph_file(path, g: Graph, fmt: Optional[str] = None, *, stars=None,
                     centres=None) -> None:
    fmt = fmt or detect_format(str(path))
    if fmt == "g6":
        Path(path).write_text(to_graph6(g) + "\n")
    elif fmt == "el":
        Path(path).write_text(format_edge_list(g, stars=stars, centres=centres))
    else:
        raise GraphError(f"unknown format {fmt!r}")
