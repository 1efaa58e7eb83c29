"""Earley-style recognition of an IDL-graph against a context-free grammar.

The chart is indexed by pairs of cuts instead of string positions.  Three
kinds of item live in it, all keyed as ``(c1, c2, tag)``:

* dotted items ``[A -> alpha . beta, c1, c2]``, tag ``("D", production, dot)``
* closure items ``[c1, c2]``: ``c2`` is reachable from ``c1`` by epsilon
  moves only, tag ``("C",)``
* scan items ``[a, c1, c2]``: epsilon moves from ``c1`` followed by one
  move reading ``a`` reach ``c2``, tag ``("S", a)``

Transitions between cuts are asked for only when a closure item or a
completed start item needs them, so parts of the graph that no grammar
prefix can read are never unfolded.

Weighted search uses the same agenda.  Items are popped best weight first
and an item that is offered a strictly better weight is pushed again, so
the chart converges to the best derivation weight of every item.  With an
unweighted grammar every weight is zero and the agenda degenerates to a
FIFO queue.
"""

from __future__ import annotations

import heapq
from collections import defaultdict
from dataclasses import dataclass, asdict
from typing import Optional, Union

from .cuts import CutStore, initial_cut
from .expr import IdlExpr
from .grammar import Cfg, WeightConventionError
from .graph import IdlGraph, build_graph

__all__ = [
    "ItemStore", "ParseSession", "ParseStats",
    "recognize", "best_string", "parse_stats",
]

CLOSURE = ("C",)


class ItemStore:
    """Items grouped by their pair of cuts, each mapped to its best weight."""

    def __init__(self):
        self.cells = defaultdict(dict)

    def get(self, key):
        c1, c2, tag = key
        cell = self.cells.get((c1, c2))
        return None if cell is None else cell.get(tag)

    def put(self, key, weight):
        c1, c2, tag = key
        self.cells[(c1, c2)][tag] = weight

    def cell(self, c1, c2):
        return self.cells.get((c1, c2), {})

    def __iter__(self):
        for (c1, c2), cell in self.cells.items():
            for tag in cell:
                yield (c1, c2, tag)

    def count(self, kind):
        return sum(1 for cell in self.cells.values() for tag in cell if tag[0] == kind)


@dataclass(frozen=True)
class ParseStats:
    accepted: bool
    cuts_interned: int
    cuts_expanded: int
    transitions_cached: int
    dotted_items: int
    closure_items: int
    scan_items: int
    agenda_pops: int

    def as_dict(self):
        return asdict(self)


class ParseSession:
    """One run of the recognizer over a grammar and an IDL-graph.

    A session owns its cut store and chart; build a new one per run.
    """

    def __init__(self, grammar: Cfg, source: Union[IdlExpr, IdlGraph], track: bool = False):
        self.grammar = grammar
        self.graph = source if isinstance(source, IdlGraph) else build_graph(source)
        self.cuts = CutStore(self.graph)
        self.items = ItemStore()
        self.track = track
        self.backptr = {}
        self.pops = 0
        self._ran = False

        self._prods = grammar.productions
        self._nts = grammar.nonterminals
        self._by_lhs = grammar.by_lhs()
        self._agenda = []
        self._seq = 0
        # (B, c) -> keys of dotted items whose dot faces B and whose right cut is c
        self._wait_nt = defaultdict(dict)
        # (a, c) -> same, for a terminal a
        self._wait_t = defaultdict(dict)
        # (B, c) -> keys of completed B items whose left cut is c
        self._done = defaultdict(dict)
        # (a, c) -> right cuts of scan items [a, c, .]
        self._scans = defaultdict(dict)

    # -- agenda ---------------------------------------------------------

    def _offer(self, key, weight, bp):
        cur = self.items.get(key)
        if cur is not None and weight <= cur:
            return
        self.items.put(key, weight)
        if self.track:
            self.backptr[key] = bp
        self._seq += 1
        heapq.heappush(self._agenda, (-weight, self._seq, key))

    def run(self):
        if self._ran:
            return self
        self._ran = True
        vs = initial_cut(self.cuts)
        for p in self._by_lhs[self.grammar.start]:
            self._offer((vs, vs, ("D", p, 0)), self.grammar.weight(p), ("init",))
        while self._agenda:
            negw, _, key = heapq.heappop(self._agenda)
            if -negw < self.items.get(key):
                continue  # superseded by a better weight
            self.pops += 1
            tag = key[2]
            if tag[0] == "D":
                self._dotted(key, -negw)
            elif tag[0] == "C":
                self._closure(key)
            else:
                self._scan(key)
        return self

    # -- inference ------------------------------------------------------

    def _dotted(self, key, w):
        c1, c2, (_, p, dot) = key
        prod = self._prods[p]
        if dot == len(prod.rhs):
            self._done[(prod.lhs, c1)][key] = None
            for parent in self._wait_nt[(prod.lhs, c1)]:
                pc1, _, (_, q, qdot) = parent
                self._offer((pc1, c2, ("D", q, qdot + 1)),
                            self.items.get(parent) + w, ("complete", parent, key))
            if prod.lhs == self.grammar.start and c1 == initial_cut(self.cuts):
                # trailing epsilon moves after a finished sentence
                for t in self.cuts.successors(c2):
                    if t.sym is None:
                        self._offer((c1, t.dst, ("D", p, dot)), w, ("eps", key))
            return
        nxt = prod.rhs[dot]
        if nxt in self._nts:
            self._wait_nt[(nxt, c2)][key] = None
            for q in self._by_lhs[nxt]:
                self._offer((c2, c2, ("D", q, 0)), self.grammar.weight(q), ("predict",))
            for child in list(self._done[(nxt, c2)]):
                self._offer((c1, child[1], ("D", p, dot + 1)),
                            w + self.items.get(child), ("complete", key, child))
        else:
            self._wait_t[(nxt, c2)][key] = None
            self._offer((c2, c2, CLOSURE), 0.0, ("seed",))
            for c3 in list(self._scans[(nxt, c2)]):
                self._offer((c1, c3, ("D", p, dot + 1)), w, ("scan", key, nxt))

    def _closure(self, key):
        c1, c2, _ = key
        for t in self.cuts.successors(c2):
            if t.sym is None:
                self._offer((c1, t.dst, CLOSURE), 0.0, ("eps", key))
            else:
                self._offer((c1, t.dst, ("S", t.sym)), 0.0, ("step", key))

    def _scan(self, key):
        c1, c3, (_, a) = key
        self._scans[(a, c1)][c3] = None
        for parent in list(self._wait_t[(a, c1)]):
            pc1, _, (_, q, qdot) = parent
            self._offer((pc1, c3, ("D", q, qdot + 1)),
                        self.items.get(parent), ("scan", parent, a))

    # -- results --------------------------------------------------------

    def final_items(self):
        self.run()
        vs = initial_cut(self.cuts)
        ve = self.cuts.lookup((self.graph.end,))
        if ve is None:
            return []
        out = []
        for tag, w in self.items.cell(vs, ve).items():
            if tag[0] == "D":
                prod = self._prods[tag[1]]
                if prod.lhs == self.grammar.start and tag[2] == len(prod.rhs):
                    out.append(((vs, ve, tag), w))
        return out

    def accepted(self):
        return bool(self.final_items())

    def yield_of(self, key):
        """Words read by the recorded best derivation of a dotted item."""
        if not self.track:
            raise RuntimeError("session was not run with backpointers")
        out = []
        stack = [key]
        # right-to-left walk so the words come out reversed
        while stack:
            item = stack.pop()
            bp = self.backptr[item]
            kind = bp[0]
            if kind == "scan":
                out.append(bp[2])
                stack.append(bp[1])
            elif kind == "complete":
                stack.append(bp[1])
                stack.append(bp[2])
            elif kind == "eps":
                stack.append(bp[1])
        return tuple(reversed(out))

    def best(self):
        finals = self.final_items()
        if not finals:
            return None
        key, w = max(finals, key=lambda kw: kw[1])
        return self.yield_of(key), w

    def stats(self):
        return ParseStats(
            accepted=self.accepted(),
            cuts_interned=len(self.cuts),
            cuts_expanded=self.cuts.expansions,
            transitions_cached=self.cuts.cached_transitions,
            dotted_items=self.items.count("D"),
            closure_items=self.items.count("C"),
            scan_items=self.items.count("S"),
            agenda_pops=self.pops,
        )


def recognize(g: Cfg, e: Union[IdlExpr, IdlGraph]) -> bool:
    """True iff some string of ``e`` is generated by ``g``."""
    return ParseSession(g, e).run().accepted()


def best_string(g: Cfg, e: Union[IdlExpr, IdlGraph]) -> Optional[tuple]:
    """Highest scoring ``(words, weight)`` in the intersection, or None if it is empty.

    The score of a string is its best derivation weight, the sum of the
    production weights used.  Weights must be at most zero; an unweighted
    grammar scores everything 0.
    """
    for p in g.productions:
        if p.weight is not None and p.weight > 0:
            raise WeightConventionError(f"positive weight on production {p}")
    return ParseSession(g, e, track=True).run().best()


def parse_stats(session: ParseSession) -> ParseStats:
    return session.run().stats()
