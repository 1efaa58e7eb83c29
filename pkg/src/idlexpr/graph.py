"""Compilation of IDL-expressions to ranked, edge-labelled acyclic graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

from .expr import Concat, Epsilon, IdlExpr, Interleave, Lock, Or, Terminal

__all__ = [
    "Kind", "Edge", "IdlGraph", "build_graph", "width_of", "zero_width_of",
    "is_l_free", "dump_graph",
]


class Kind(Enum):
    SYM = "sym"
    EPS = "eps"
    ISTART = "istart"   # fan-out into the arguments of an interleave
    IEND = "iend"       # fan-in out of the arguments of an interleave


class Edge(NamedTuple):
    src: int
    dst: int
    kind: Kind
    sym: Optional[str] = None

    def label_text(self):
        if self.kind is Kind.SYM:
            return self.sym
        return {Kind.EPS: "ε", Kind.ISTART: "⊢", Kind.IEND: "⊣"}[self.kind]


@dataclass(frozen=True)
class IdlGraph:
    num_vertices: int
    edges: tuple
    start: int
    end: int
    rank: tuple
    out_edges: tuple = field(repr=False)
    in_edges: tuple = field(repr=False)
    # vertex sets of the argument subgraphs of each lock occurrence, outermost first
    lock_scopes: tuple = field(repr=False, default=())

    @property
    def vertices(self):
        return range(self.num_vertices)


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges = []
        self.rank = []
        self.lock_scopes = []

    def vertex(self, j):
        v = self.n
        self.n += 1
        self.rank.append(j)
        return v

    def build(self, e, j):
        """Return (start, end) of the subgraph for ``e`` at rank ``j``."""
        if isinstance(e, (Terminal, Epsilon)):
            s = self.vertex(j)
            t = self.vertex(j)
            if isinstance(e, Terminal):
                self.edges.append(Edge(s, t, Kind.SYM, e.sym))
            else:
                self.edges.append(Edge(s, t, Kind.EPS))
            return s, t
        if isinstance(e, Concat):
            s1, t1 = self.build(e.left, j)
            s2, t2 = self.build(e.right, j)
            self.edges.append(Edge(t1, s2, Kind.EPS))
            return s1, t2
        s = self.vertex(j)
        if isinstance(e, Lock):
            slot = len(self.lock_scopes)
            self.lock_scopes.append(None)
            first = self.n
            cs, ct = self.build(e.child, j + 1)
            self.lock_scopes[slot] = frozenset(range(first, self.n))
            t = self.vertex(j)
            self.edges.append(Edge(s, cs, Kind.EPS))
            self.edges.append(Edge(ct, t, Kind.EPS))
            return s, t
        if isinstance(e, (Or, Interleave)):
            ends = [self.build(c, j) for c in e.children]
            t = self.vertex(j)
            fan_out, fan_in = (Kind.EPS, Kind.EPS) if isinstance(e, Or) else (Kind.ISTART, Kind.IEND)
            for cs, _ in ends:
                self.edges.append(Edge(s, cs, fan_out))
            for _, ct in ends:
                self.edges.append(Edge(ct, t, fan_in))
            return s, t
        raise TypeError(f"not an IDL-expression: {e!r}")


def build_graph(e: IdlExpr) -> IdlGraph:
    """Compile ``e`` into its IDL-graph at rank 0.

    Vertex ids are handed out in pre-order: a construct's start vertex, then
    its arguments left to right, then its end vertex.  Fan-out and fan-in
    edges are stored in argument order, which the cut transitions rely on.
    """
    b = _Builder()
    start, end = b.build(e, 0)
    out_edges = [[] for _ in range(b.n)]
    in_edges = [[] for _ in range(b.n)]
    for edge in b.edges:
        out_edges[edge.src].append(edge)
        in_edges[edge.dst].append(edge)
    return IdlGraph(
        num_vertices=b.n,
        edges=tuple(b.edges),
        start=start,
        end=end,
        rank=tuple(b.rank),
        out_edges=tuple(map(tuple, out_edges)),
        in_edges=tuple(map(tuple, in_edges)),
        lock_scopes=tuple(b.lock_scopes),
    )


def _widths(e):
    if isinstance(e, (Terminal, Epsilon)):
        return 1, 1
    if isinstance(e, Lock):
        w, _ = _widths(e.child)
        return w, 1
    if isinstance(e, Or):
        ws = [_widths(c) for c in e.children]
        return max(w for w, _ in ws), max(z for _, z in ws)
    if isinstance(e, Concat):
        (w1, z1), (w2, z2) = _widths(e.left), _widths(e.right)
        return max(w1, w2), max(z1, z2)
    if isinstance(e, Interleave):
        ws = [_widths(c) for c in e.children]
        zsum = sum(z for _, z in ws)
        # one argument may be inside a lock at full width; the others sit at 0-width
        return max(zsum - z + w for w, z in ws), zsum
    raise TypeError(f"not an IDL-expression: {e!r}")


def width_of(e: IdlExpr) -> int:
    """Longest cut of the graph of ``e``, computed structurally."""
    return _widths(e)[0]


def zero_width_of(e: IdlExpr) -> int:
    """Longest cut made only of L-free vertices, computed structurally."""
    return _widths(e)[1]


def is_l_free(g: IdlGraph, v: int) -> bool:
    """True iff ``v`` lies outside the argument subgraph of every lock."""
    if not 0 <= v < g.num_vertices:
        raise ValueError(f"vertex {v} not in graph")
    free = not any(v in scope for scope in g.lock_scopes)
    assert free == (g.rank[v] == 0), f"rank/lock-scope mismatch at vertex {v}"
    return free


def dump_graph(g: IdlGraph) -> str:
    lines = [f"# vertices={g.num_vertices} start={g.start} end={g.end}"]
    for e in g.edges:
        lines.append(f"{e.src} -> {e.dst} [{e.label_text()}] {g.rank[e.src]} {g.rank[e.dst]}")
    return "\n".join(lines)
