"""Command line front end.

Exit status: 0 success (or accepted), 1 rejected / no result, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cuts import (
    DEFAULT_CUT_CAP, DEFAULT_LANG_CAP, CutStore, check_cut_bound, graph_language,
)
from .expr import DEFAULT_SIGMA_CAP, IdlSyntaxError, ResourceCapExceeded, language, parse_expr_text
from .grammar import GrammarError, parse_grammar_text
from .graph import build_graph, dump_graph, width_of, zero_width_of
from .parser import ParseSession, best_string

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2

NEEDS_GRAMMAR = {"recognize", "best", "stats"}


class UsageError(Exception):
    pass


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _positive(text):
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


def build_arg_parser():
    ap = argparse.ArgumentParser(prog="idl", description="IDL-expression tools")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "lang": "list the language of an expression, one string per line",
        "graph": "dump the IDL-graph edges",
        "width": "print width and 0-width",
        "cuts": "enumerate cuts and check the cut-count bound",
        "recognize": "does the grammar generate some string of the expression?",
        "best": "best scoring string in the intersection",
        "stats": "recognizer statistics",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        if name in NEEDS_GRAMMAR:
            sp.add_argument("inputs", nargs="*", metavar="FILE",
                            help="EXPR_FILE GRAMMAR_FILE, or just GRAMMAR_FILE with -e")
        else:
            sp.add_argument("inputs", nargs="*", metavar="EXPR_FILE",
                            help="expression file ('-' or nothing reads stdin)")
        sp.add_argument("-e", "--expr", help="expression text given inline")
        sp.add_argument("--json", action="store_true", help="emit JSON")
        sp.add_argument("--cap-cuts", type=_positive, default=DEFAULT_CUT_CAP)
        sp.add_argument("--cap-lang", type=_positive, default=DEFAULT_LANG_CAP)
        if name == "lang":
            sp.add_argument("--via-graph", action="store_true",
                            help="compute the language by walking the cut automaton")
        if name == "recognize":
            sp.add_argument("--stats", action="store_true", help="also print statistics")
    return ap


def _load(args):
    inputs = list(args.inputs)
    if args.expr is not None:
        expr_text = args.expr
    else:
        expr_text = _read(inputs.pop(0) if inputs else "-")
    grammar = None
    if args.command in NEEDS_GRAMMAR:
        if len(inputs) != 1:
            raise UsageError(f"{args.command} needs exactly one grammar file")
        grammar = parse_grammar_text(_read(inputs[0]))
    elif inputs:
        raise UsageError(f"unexpected arguments: {' '.join(inputs)}")
    return parse_expr_text(expr_text), grammar


def _emit(args, out, payload, text):
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif text:
        out.write(text + "\n")


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        e, g = _load(args)
        return _dispatch(args, e, g, out)
    except (IdlSyntaxError, GrammarError, ResourceCapExceeded, UsageError, OSError) as exc:
        err.write(f"idl: error: {exc}\n")
        return EXIT_ERROR


def _dispatch(args, e, g, out):
    cmd = args.command
    if cmd == "lang":
        if args.via_graph:
            words = graph_language(CutStore(build_graph(e)), args.cap_cuts, args.cap_lang)
        else:
            words = language(e, max(args.cap_lang, DEFAULT_SIGMA_CAP))
            if len(words) > args.cap_lang:
                raise ResourceCapExceeded(f"language has more than {args.cap_lang} strings")
        lines = sorted(" ".join(w) for w in words)
        _emit(args, out, {"strings": lines}, "\n".join(lines) if lines else "")
        return EXIT_OK
    if cmd == "graph":
        g_ = build_graph(e)
        payload = {
            "vertices": g_.num_vertices, "start": g_.start, "end": g_.end,
            "rank": list(g_.rank),
            "edges": [[x.src, x.dst, x.label_text()] for x in g_.edges],
        }
        _emit(args, out, payload, dump_graph(g_))
        return EXIT_OK
    if cmd == "width":
        w, z = width_of(e), zero_width_of(e)
        _emit(args, out, {"width": w, "zero_width": z}, f"width={w} zero_width={z}")
        return EXIT_OK
    if cmd == "cuts":
        rep = check_cut_bound(CutStore(build_graph(e)), args.cap_cuts)
        d = rep.as_dict()
        text = "\n".join(f"{k}={d[k]}" for k in
                         ("cuts", "vertices", "width", "zero_width", "bound", "transitions", "holds"))
        _emit(args, out, d, text)
        return EXIT_OK
    if cmd in ("recognize", "stats"):
        session = ParseSession(g, e).run()
        st = session.stats()
        if cmd == "stats" or args.stats:
            _emit(args, out, st.as_dict(),
                  "\n".join(f"{k}={v}" for k, v in st.as_dict().items()))
        else:
            _emit(args, out, {"accepted": st.accepted},
                  "accepted" if st.accepted else "rejected")
        return EXIT_OK if st.accepted else EXIT_REJECT
    if cmd == "best":
        res = best_string(g, e)
        if res is None:
            _emit(args, out, {"string": None, "weight": None}, "NONE")
            return EXIT_REJECT
        words, w = res
        _emit(args, out, {"string": " ".join(words), "weight": w}, f"{' '.join(words)}\t{w:g}")
        return EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
