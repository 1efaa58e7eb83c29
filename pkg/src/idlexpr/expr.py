"""IDL-expressions: abstract syntax, concrete text syntax, and set semantics.

An IDL-expression is built from words with four operators:

    ||(e1, ..., en)   interleave (shuffle) the strings of the arguments
    \\/(e1, ..., en)   choose exactly one argument
    x(e)              lock: nothing may be interleaved into the argument
    e1 . e2           concatenation (right associative)

plus ``eps`` for the empty string.

The semantics here is the direct, exponential one over *marked strings*:
sequences of word-strings whose boundaries are gaps where foreign material
may be inserted.  It is meant as ground truth for the graph based machinery,
not as something to run on large inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

__all__ = [
    "Terminal", "Epsilon", "Lock", "Or", "Interleave", "Concat", "IdlExpr",
    "MarkedString", "DIAMOND",
    "IdlSyntaxError", "ArityError", "ResourceCapExceeded",
    "parse_expr_text", "render_expr_text",
    "lock_hom", "comb_pair", "comb_sets", "sigma", "language", "op_count",
    "marked", "marked_text", "is_well_placed", "concat_all", "subexpressions",
    "DEFAULT_SIGMA_CAP",
]

RESERVED = frozenset({"eps", "x", "\\/", "||", ".", "(", ")", ","})
_PUNCT = "(),."
DIAMOND = "◇"
DEFAULT_SIGMA_CAP = 1_000_000


class IdlSyntaxError(ValueError):
    """Malformed expression text; carries a 1-based line and column."""

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ArityError(IdlSyntaxError):
    pass


class ResourceCapExceeded(RuntimeError):
    """An exhaustive computation grew past its configured limit.

    This says the instance is too big for brute force, not that the
    answer is wrong or empty.
    """


def _check_word(name):
    if not isinstance(name, str) or not name:
        raise ValueError(f"terminal must be a non-empty string, got {name!r}")
    if name in RESERVED or DIAMOND in name:
        raise ValueError(f"{name!r} is reserved")
    if any(ch.isspace() or ch in _PUNCT for ch in name):
        raise ValueError(f"terminal {name!r} contains whitespace or punctuation")


@dataclass(frozen=True)
class Terminal:
    sym: str

    def __post_init__(self):
        _check_word(self.sym)


@dataclass(frozen=True)
class Epsilon:
    pass


@dataclass(frozen=True)
class Lock:
    child: IdlExpr


@dataclass(frozen=True)
class Or:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ArityError("disjunction needs at least 2 arguments")


@dataclass(frozen=True)
class Interleave:
    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if len(self.children) < 2:
            raise ArityError("interleave needs at least 2 arguments")


@dataclass(frozen=True)
class Concat:
    left: IdlExpr
    right: IdlExpr


IdlExpr = Union[Terminal, Epsilon, Lock, Or, Interleave, Concat]


def concat_all(parts):
    """Right-nested concatenation of one or more expressions."""
    parts = list(parts)
    if not parts:
        return Epsilon()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Concat(p, out)
    return out


def subexpressions(e):
    """Direct arguments of the top operator of ``e``."""
    if isinstance(e, Lock):
        return (e.child,)
    if isinstance(e, (Or, Interleave)):
        return e.children
    if isinstance(e, Concat):
        return (e.left, e.right)
    return ()


# --------------------------------------------------------------------------
# text syntax


def _tokenize(text):
    toks = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            toks.append((ch, line, col))
            i += 1
            col += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in _PUNCT:
            j += 1
        toks.append((text[i:j], line, col))
        col += j - i
        i = j
    toks.append((None, line, col))
    return toks


class _Reader:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0]

    def take(self, expected=None):
        tok, line, col = self.toks[self.pos]
        if expected is not None and tok != expected:
            shown = "end of input" if tok is None else repr(tok)
            raise IdlSyntaxError(f"expected {expected!r}, found {shown}", line, col)
        self.pos += 1
        return tok

    def where(self):
        _, line, col = self.toks[self.pos]
        return line, col

    def expr(self):
        parts = [self.atom()]
        while self.peek() == ".":
            self.take(".")
            parts.append(self.atom())
        return concat_all(parts)

    def atom(self):
        tok = self.peek()
        line, col = self.where()
        if tok is None:
            raise IdlSyntaxError("unexpected end of input", line, col)
        if tok == "eps":
            self.take()
            return Epsilon()
        if tok == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if tok == "x":
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return Lock(inner)
        if tok in ("\\/", "||"):
            self.take()
            self.take("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.expr())
            self.take(")")
            if len(args) < 2:
                name = "disjunction" if tok == "\\/" else "interleave"
                raise ArityError(f"{name} needs at least 2 arguments, got 1", line, col)
            return Or(args) if tok == "\\/" else Interleave(args)
        if tok in RESERVED:
            raise IdlSyntaxError(f"unexpected {tok!r}", line, col)
        if DIAMOND in tok:
            raise IdlSyntaxError(f"{DIAMOND!r} may not appear in a word", line, col)
        self.take()
        return Terminal(tok)


def parse_expr_text(text: str) -> IdlExpr:
    """Parse the ASCII expression syntax, e.g. ``||(\\/(a, b), c . x(d . e))``.

    Plain parentheses group, so ``(a . b) . c`` is accepted although ``.``
    is right associative.
    """
    r = _Reader(text)
    e = r.expr()
    if r.peek() is not None:
        line, col = r.where()
        raise IdlSyntaxError(f"trailing input {r.peek()!r}", line, col)
    return e


def render_expr_text(e: IdlExpr) -> str:
    if isinstance(e, Terminal):
        return e.sym
    if isinstance(e, Epsilon):
        return "eps"
    if isinstance(e, Lock):
        return f"x({render_expr_text(e.child)})"
    if isinstance(e, Or):
        return "\\/(" + ", ".join(render_expr_text(c) for c in e.children) + ")"
    if isinstance(e, Interleave):
        return "||(" + ", ".join(render_expr_text(c) for c in e.children) + ")"
    if isinstance(e, Concat):
        left = render_expr_text(e.left)
        if isinstance(e.left, Concat):
            left = f"({left})"
        return f"{left} . {render_expr_text(e.right)}"
    raise TypeError(f"not an IDL-expression: {e!r}")


def op_count(e: IdlExpr) -> int:
    """Number of operator occurrences (interleave, disjunction, lock, concatenation)."""
    if isinstance(e, (Terminal, Epsilon)):
        return 0
    return 1 + sum(op_count(c) for c in subexpressions(e))


# --------------------------------------------------------------------------
# marked strings
#
# A marked string over words W is a string over W + {DIAMOND}.  We store it
# as the tuple of its DIAMOND-separated segments, each a tuple of words, so
# a string with k diamonds has k + 1 segments and the empty string is ((),).

MarkedString = tuple


def marked(text):
    """Build a marked string from text such as ``"a ◇ b b ◇ c"``."""
    return tuple(tuple(seg.split()) for seg in text.split(DIAMOND))


def marked_text(m):
    return f" {DIAMOND} ".join(" ".join(seg) for seg in m)


def is_well_placed(m):
    """True iff no diamond is leading, trailing or doubled."""
    return len(m) == 1 or all(m)


def lock_hom(m):
    """Erase every separator, concatenating the segments into one word tuple."""
    return tuple(w for seg in m for w in seg)


def _normalize(m):
    kept = tuple(seg for seg in m if seg)
    return kept if kept else ((),)


def comb_pair(x, y):
    """All interleavings of the segment sequences ``x`` and ``y``."""
    return _comb_prime(x, y) | _comb_prime(y, x)


def _comb_prime(x, y):
    if len(x) == 1:
        return {x + y}
    head = x[:1]
    return {head + z for z in comb_pair(x[1:], y)}


def comb_sets(sets, cap=DEFAULT_SIGMA_CAP, normalize=True):
    """Left fold of ``comb`` over two or more sets of marked strings."""
    it = iter(sets)
    acc = set(next(it))
    for nxt in it:
        out = set()
        for x in acc:
            for y in nxt:
                for z in comb_pair(x, y):
                    out.add(_normalize(z) if normalize else z)
                if len(out) > cap:
                    raise ResourceCapExceeded(f"comb produced more than {cap} marked strings")
        acc = out
    return acc


def sigma(e: IdlExpr, cap: int = DEFAULT_SIGMA_CAP, normalize: bool = True) -> set:
    """The set of marked strings denoted by ``e``.

    With ``normalize`` (the default) empty segments, which only arise from
    ``eps``, are dropped after every step.  They mark gaps adjacent to gaps
    that already exist, so dropping them never changes the language; it does
    keep every result free of leading, trailing and doubled separators.
    """
    if isinstance(e, Terminal):
        return {((e.sym,),)}
    if isinstance(e, Epsilon):
        return {((),)}
    if isinstance(e, Lock):
        return {(lock_hom(m),) for m in sigma(e.child, cap, normalize)}
    if isinstance(e, Or):
        out = set()
        for c in e.children:
            out |= sigma(c, cap, normalize)
            if len(out) > cap:
                raise ResourceCapExceeded(f"sigma produced more than {cap} marked strings")
        return out
    if isinstance(e, Interleave):
        return comb_sets([sigma(c, cap, normalize) for c in e.children], cap, normalize)
    if isinstance(e, Concat):
        left = sigma(e.left, cap, normalize)
        right = sigma(e.right, cap, normalize)
        if len(left) * len(right) > cap:
            raise ResourceCapExceeded(f"sigma produced more than {cap} marked strings")
        out = {x + y for x in left for y in right}
        return {_normalize(m) for m in out} if normalize else out
    raise TypeError(f"not an IDL-expression: {e!r}")


def language(e: IdlExpr, cap: int = DEFAULT_SIGMA_CAP) -> set:
    """The finite language of ``e`` as a set of word tuples."""
    return {lock_hom(m) for m in sigma(e, cap)}


def _iter_words(e: IdlExpr) -> Iterable[str]:
    if isinstance(e, Terminal):
        yield e.sym
    for c in subexpressions(e):
        yield from _iter_words(c)


def alphabet(e: IdlExpr) -> set:
    return set(_iter_words(e))
