"""Random instance generators and brute-force oracles shared by the tests."""

import itertools
import math
import random

from idlexpr.expr import (
    Concat, Epsilon, Interleave, Lock, Or, Terminal, concat_all, language, parse_expr_text,
)
from idlexpr.grammar import Cfg, Production

NEG_INF = -math.inf

PIANO_TEXT = r"||( \/(necessarily, must), we . x(play . piano) )"


def piano_expr():
    return parse_expr_text(PIANO_TEXT)


def pi_family(i, k):
    """||(a1 ... ai, a(i+1) ... a(2i), ..., ) with k arguments of i words each."""
    args = [concat_all([Terminal(f"a{j * i + t + 1}") for t in range(i)]) for j in range(k)]
    return Interleave(args)


def random_expr(rng, max_ops=8, alphabet=("a", "b", "c"), eps_rate=0.08):
    """Random expression with at most ``max_ops`` operator occurrences."""
    budget = [rng.randint(0, max_ops)]

    def leaf():
        if rng.random() < eps_rate:
            return Epsilon()
        return Terminal(rng.choice(alphabet))

    def gen():
        if budget[0] <= 0:
            return leaf()
        budget[0] -= 1
        op = rng.choice(["concat", "concat", "or", "interleave", "interleave", "lock"])
        if op == "lock":
            return Lock(gen())
        if op == "concat":
            return Concat(gen(), gen())
        n = 2 if rng.random() < 0.75 else 3
        kids = [gen() for _ in range(n)]
        return Or(kids) if op == "or" else Interleave(kids)

    return gen()


def random_suite(n, seed, max_ops=8):
    rng = random.Random(seed)
    return [random_expr(rng, max_ops) for _ in range(n)]


# --------------------------------------------------------------------------
# grammars


def random_cfg(rng, alphabet=("a", "b", "c"), weighted=False, sample=None):
    """Small random grammar over ``alphabet`` plus an unused word ``d``.

    With ``sample`` (a word tuple) the grammar is biased to derive it, so a
    good share of instances have a non-empty intersection.
    """
    nts = ["S", "A", "B"]
    syms = list(alphabet) + ["d"]
    prods = []
    style = rng.randrange(3) if sample is None else rng.randrange(4)
    if style == 0:
        for _ in range(rng.randint(2, 6)):
            lhs = rng.choice(nts)
            rhs = tuple(rng.choice(nts + syms) for _ in range(rng.randint(0, 3)))
            prods.append((lhs, rhs))
    elif style == 1:
        # right-linear: a regular subset of the words, like an n-gram filter
        allowed = rng.sample(syms, rng.randint(1, len(syms)))
        for a in allowed:
            prods.append(("S", (a, rng.choice(["S", "A"]))))
        prods.append(("S", ()))
        prods.append(("A", (rng.choice(syms), "S")))
    elif style == 2:
        # nested pairs and unit cycles
        a, b = rng.choice(syms), rng.choice(syms)
        prods += [("S", (a, "S", b)), ("S", ("A",)), ("A", ("S",)), ("A", ())]
        prods.append(("A", (rng.choice(syms), "A")))
    else:
        # split the sample into a random binary-ish derivation
        cut = rng.randint(0, len(sample))
        prods += [("S", ("A", "B")), ("A", tuple(sample[:cut])), ("B", tuple(sample[cut:]))]
        if rng.random() < 0.5:
            prods.append(("B", tuple(reversed(sample[cut:]))))
    if not any(lhs == "S" for lhs, _ in prods):
        prods.append(("S", tuple(rng.choice(syms) for _ in range(rng.randint(0, 2)))))
    out = []
    for lhs, rhs in prods:
        w = -float(rng.randint(0, 4)) / 2 if weighted else None
        out.append(Production(lhs, rhs, w))
    return Cfg(tuple(out), "S")


def span_best(g, w):
    """Best derivation weight of ``w`` from the start symbol, or -inf.

    Bellman-Ford style fixpoint over (symbol, i, j) spans; shares nothing
    with the Earley code.  Unweighted grammars score 0.
    """
    n = len(w)
    nts = g.nonterminals
    best = {}

    def sym_val(x, i, j):
        if x in nts:
            return best.get((x, i, j), NEG_INF)
        return 0.0 if j == i + 1 and w[i] == x else NEG_INF

    def seq_val(rhs, i, j):
        if not rhs:
            return 0.0 if i == j else NEG_INF
        if len(rhs) == 1:
            return sym_val(rhs[0], i, j)
        top = NEG_INF
        for k in range(i, j + 1):
            head = sym_val(rhs[0], i, k)
            if head == NEG_INF:
                continue
            rest = seq_val(rhs[1:], k, j)
            if rest != NEG_INF:
                top = max(top, head + rest)
        return top

    changed = True
    while changed:
        changed = False
        for i in range(n + 1):
            for j in range(i, n + 1):
                for pi, p in enumerate(g.productions):
                    v = seq_val(p.rhs, i, j)
                    if v == NEG_INF:
                        continue
                    v += g.weight(pi)
                    if v > best.get((p.lhs, i, j), NEG_INF):
                        best[(p.lhs, i, j)] = v
                        changed = True
    return best.get((g.start, 0, n), NEG_INF)


def derives(g, w):
    return span_best(g, tuple(w)) != NEG_INF


def brute_intersection(g, e):
    return {w for w in language(e) if derives(g, w)}


def brute_best_weight(g, e):
    scores = [span_best(g, w) for w in language(e)]
    scores = [s for s in scores if s != NEG_INF]
    return max(scores) if scores else None


def all_strings(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)
