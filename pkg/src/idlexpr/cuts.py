"""Cuts of an IDL-graph and the one-step transition relation between them.

A cut is a duplicate-free tuple of vertices: the frontier of a parallel
traversal of the graph.  Transitions are computed on demand and cached per
cut, so a caller that only explores part of the cut space only pays for
that part.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .expr import ResourceCapExceeded
from .graph import IdlGraph, Kind, is_l_free

__all__ = [
    "Transition", "CutStore", "CutCapExceeded", "CutBoundReport",
    "initial_cut", "successors", "enumerate_cuts", "check_cut_bound",
    "graph_language", "DEFAULT_CUT_CAP", "DEFAULT_LANG_CAP",
]

DEFAULT_CUT_CAP = 100_000
DEFAULT_LANG_CAP = 1_000_000


class CutCapExceeded(ResourceCapExceeded):
    pass


class Transition(NamedTuple):
    src: int
    sym: Optional[str]  # None for an epsilon move
    dst: int


class CutStore:
    """Interning table for cuts of one graph plus a cache of their transitions.

    Ids are dense and handed out in discovery order.  One store belongs to
    one session; it is not safe to share between threads.
    """

    def __init__(self, graph: IdlGraph):
        self.graph = graph
        self.cuts = []
        self._ids = {}
        self._succ = []
        self.expansions = 0

    def __len__(self):
        return len(self.cuts)

    def intern(self, cut):
        cut = tuple(cut)
        cid = self._ids.get(cut)
        if cid is None:
            cid = len(self.cuts)
            self._ids[cut] = cid
            self.cuts.append(cut)
            self._succ.append(None)
        return cid

    def lookup(self, cut):
        return self._ids.get(tuple(cut))

    def cut(self, cid):
        return self.cuts[cid]

    def is_expanded(self, cid):
        return self._succ[cid] is not None

    @property
    def cached_transitions(self):
        return sum(len(s) for s in self._succ if s is not None)

    def successors(self, cid):
        cached = self._succ[cid]
        if cached is None:
            cached = [Transition(cid, sym, self.intern(nxt))
                      for sym, nxt in _moves(self.graph, self.cuts[cid])]
            self._succ[cid] = cached
            self.expansions += 1
        return cached


def _moves(g, c):
    """Yield ``(label, next_cut)`` for every transition out of cut ``c``.

    Only vertices of maximal rank in ``c`` may move; this keeps locked
    regions from being interleaved with material outside them.
    """
    rank = g.rank
    top = max(rank[v] for v in c)
    seen = set()
    for i, v in enumerate(c):
        if rank[v] != top:
            continue
        outs = g.out_edges[v]
        if not outs:
            continue
        kinds = {e.kind for e in outs}
        if Kind.ISTART in kinds:
            assert kinds == {Kind.ISTART}, f"mixed fan-out at vertex {v}"
            nxt = c[:i] + tuple(e.dst for e in outs) + c[i + 1:]
            moves = [(None, nxt)]
        elif Kind.IEND in kinds:
            assert len(outs) == 1, f"fan-in vertex {v} has several out-edges"
            target = outs[0].dst
            preds = tuple(e.src for e in g.in_edges[target])
            assert all(e.kind is Kind.IEND for e in g.in_edges[target])
            n = len(preds)
            # fire once, from the leftmost member of a complete, ordered block
            if c[i:i + n] != preds or any(rank[p] != top for p in preds):
                continue
            moves = [(None, c[:i] + (target,) + c[i + n:])]
        else:
            moves = [(e.sym if e.kind is Kind.SYM else None, c[:i] + (e.dst,) + c[i + 1:])
                     for e in outs]
        for sym, nxt in moves:
            assert len(set(nxt)) == len(nxt), f"duplicate vertex in cut {nxt}"
            if (sym, nxt) not in seen:
                seen.add((sym, nxt))
                yield sym, nxt


def initial_cut(store: CutStore) -> int:
    return store.intern((store.graph.start,))


def successors(store: CutStore, cid: int) -> list:
    return store.successors(cid)


def enumerate_cuts(store: CutStore, cap: int = DEFAULT_CUT_CAP) -> list:
    """Breadth-first closure of the initial cut; ids in discovery order."""
    start = initial_cut(store)
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        cid = queue.popleft()
        for t in store.successors(cid):
            if t.dst not in seen:
                seen.add(t.dst)
                if len(seen) > cap:
                    raise CutCapExceeded(f"more than {cap} cuts")
                order.append(t.dst)
                queue.append(t.dst)
    return order


@dataclass(frozen=True)
class CutBoundReport:
    count: int
    vertices: int
    width: int
    zero_width: int
    transitions: int
    holds: bool

    @property
    def bound(self):
        return (self.vertices / self.width) ** self.width

    def as_dict(self):
        return {
            "cuts": self.count,
            "vertices": self.vertices,
            "width": self.width,
            "zero_width": self.zero_width,
            "bound": self.bound,
            "transitions": self.transitions,
            "holds": self.holds,
        }


def check_cut_bound(store: CutStore, cap: int = DEFAULT_CUT_CAP) -> CutBoundReport:
    """Count the cuts and test ``|cuts| <= (|V| / k) ** k`` with k the width."""
    ids = enumerate_cuts(store, cap)
    g = store.graph
    lengths = [len(store.cut(c)) for c in ids]
    k = max(lengths)
    zero = max(len(store.cut(c)) for c in ids
               if all(is_l_free(g, v) for v in store.cut(c)))
    n = g.num_vertices
    count = len(ids)
    return CutBoundReport(
        count=count,
        vertices=n,
        width=k,
        zero_width=zero,
        transitions=sum(len(store.successors(c)) for c in ids),
        # exact integer form of count <= (n / k) ** k
        holds=count * k ** k <= n ** k,
    )


def graph_language(store: CutStore, cap: int = DEFAULT_CUT_CAP,
                   lang_cap: int = DEFAULT_LANG_CAP) -> set:
    """Every word tuple spelled by a transition path from the start cut to the end cut."""
    enumerate_cuts(store, cap)
    final = store.lookup((store.graph.end,))
    memo = {}

    def suffixes(cid):
        if cid in memo:
            return memo[cid]
        out = {()} if cid == final else set()
        for t in store.successors(cid):
            head = () if t.sym is None else (t.sym,)
            for rest in suffixes(t.dst):
                out.add(head + rest)
            if len(out) > lang_cap:
                raise ResourceCapExceeded(f"language has more than {lang_cap} strings")
        memo[cid] = out
        return out

    return suffixes(initial_cut(store))
