"""IDL-expressions and CFG recognition over their graphs."""

from .expr import (
    ArityError, Concat, Epsilon, IdlExpr, IdlSyntaxError, Interleave, Lock, Or,
    ResourceCapExceeded, Terminal, comb_pair, language, lock_hom, op_count,
    parse_expr_text, render_expr_text, sigma,
)
from .graph import IdlGraph, build_graph, is_l_free, width_of, zero_width_of
from .cuts import (
    CutCapExceeded, CutStore, check_cut_bound, enumerate_cuts, graph_language,
    initial_cut, successors,
)
from .grammar import (
    Cfg, GrammarError, Production, WeightConventionError, earley_recognize_string,
    grammar_size, parse_grammar_text,
)
from .parser import ParseSession, best_string, parse_stats, recognize

__version__ = "0.1.0"
