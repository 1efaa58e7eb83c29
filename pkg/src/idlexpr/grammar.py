"""Context-free grammars: text format, size, and a plain string Earley recognizer."""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "Production", "Cfg", "GrammarError", "WeightConventionError",
    "parse_grammar_text", "grammar_size", "earley_chart", "earley_recognize_string",
]


class GrammarError(ValueError):
    pass


class WeightConventionError(GrammarError):
    """Weights must be log-scores, i.e. never positive."""


@dataclass(frozen=True)
class Production:
    lhs: str
    rhs: tuple
    weight: Optional[float] = None

    def __str__(self):
        parts = [self.lhs, "->", *self.rhs]
        if self.weight is not None:
            parts += ["@", f"{self.weight:g}"]
        return " ".join(parts)


@dataclass(frozen=True)
class Cfg:
    productions: tuple
    start: str

    def __post_init__(self):
        object.__setattr__(self, "productions", tuple(self.productions))
        if not self.productions:
            raise GrammarError("grammar has no productions")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} has no productions")
        weighted = [p.weight is not None for p in self.productions]
        if any(weighted) and not all(weighted):
            raise GrammarError("either every production carries a weight or none does")
        for p in self.productions:
            if p.weight is not None and p.weight > 0:
                raise WeightConventionError(f"positive weight on production {p}")

    @property
    def nonterminals(self):
        return frozenset(p.lhs for p in self.productions)

    @property
    def terminals(self):
        nts = self.nonterminals
        return frozenset(s for p in self.productions for s in p.rhs if s not in nts)

    @property
    def weighted(self):
        return self.productions[0].weight is not None

    def weight(self, index):
        w = self.productions[index].weight
        return 0.0 if w is None else w

    def by_lhs(self):
        table = defaultdict(list)
        for i, p in enumerate(self.productions):
            table[p.lhs].append(i)
        return table


_LINE = re.compile(r"^\s*(\S+)\s*->(.*?)(?:@\s*(\S+))?\s*$")


def parse_grammar_text(text: str, start: Optional[str] = None) -> Cfg:
    """Read one production per line: ``LHS -> rhs tokens [@ weight]``.

    An empty right-hand side is an epsilon production and ``#`` starts a
    comment.  Tokens that occur on some left-hand side are nonterminals,
    every other right-hand-side token is a terminal.  The first left-hand
    side is the start symbol unless ``start`` is given.
    """
    prods = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _LINE.match(line)
        if m is None:
            raise GrammarError(f"line {lineno}: expected 'LHS -> rhs'")
        lhs, body, weight = m.groups()
        if "@" in body or "->" in body:
            raise GrammarError(f"line {lineno}: stray '@' or '->'")
        if weight is not None:
            try:
                weight = float(weight)
            except ValueError:
                raise GrammarError(f"line {lineno}: bad weight {weight!r}") from None
        prods.append(Production(lhs, tuple(body.split()), weight))
    if not prods:
        raise GrammarError("grammar has no productions")
    return Cfg(tuple(prods), start if start is not None else prods[0].lhs)


def grammar_size(g: Cfg) -> int:
    """Sum over productions of one (for the left side) plus the right side length."""
    return sum(1 + len(p.rhs) for p in g.productions)


def earley_chart(g: Cfg, w) -> set:
    """All Earley items ``(production, dot, i, j)`` derivable for ``w``.

    Every new item is matched against the items already in the chart in
    both directions, so epsilon productions need no special treatment.
    """
    w = tuple(w)
    prods = g.productions
    nts = g.nonterminals
    by_lhs = g.by_lhs()
    chart = set()
    agenda = []
    waiting = defaultdict(list)  # (B, j) -> items with the dot before B ending at j
    done = defaultdict(set)      # (B, i) -> ends k of completed B items starting at i

    def add(item):
        if item not in chart:
            chart.add(item)
            agenda.append(item)

    for pi in by_lhs[g.start]:
        add((pi, 0, 0, 0))
    while agenda:
        pi, dot, i, j = agenda.pop()
        rhs = prods[pi].rhs
        if dot == len(rhs):
            lhs = prods[pi].lhs
            if j not in done[(lhs, i)]:
                done[(lhs, i)].add(j)
                for qi, qdot, h, _ in list(waiting[(lhs, i)]):
                    add((qi, qdot + 1, h, j))
            continue
        nxt = rhs[dot]
        if nxt in nts:
            waiting[(nxt, j)].append((pi, dot, i, j))
            for qi in by_lhs[nxt]:
                add((qi, 0, j, j))
            for k in list(done[(nxt, j)]):
                add((pi, dot + 1, i, k))
        elif j < len(w) and w[j] == nxt:
            add((pi, dot + 1, i, j + 1))
    return chart


def earley_recognize_string(g: Cfg, w) -> bool:
    """True iff ``g`` generates the word sequence ``w``."""
    w = tuple(w)
    chart = earley_chart(g, w)
    return any((p, len(g.productions[p].rhs), 0, len(w)) in chart
               for p in g.by_lhs()[g.start])
