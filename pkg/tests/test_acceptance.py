"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line; conftest prints them at the end of the
run.  ``python tests/test_acceptance.py`` runs them standalone.
"""

import random
import time

import pytest

from idlexpr.cuts import CutStore, check_cut_bound, enumerate_cuts, graph_language
from idlexpr.expr import comb_pair, language, marked, op_count, parse_expr_text, sigma
from idlexpr.grammar import earley_recognize_string, grammar_size, parse_grammar_text
from idlexpr.graph import build_graph, is_l_free, width_of, zero_width_of
from idlexpr.parser import ParseSession, best_string, recognize

from helpers import (
    brute_best_weight, piano_expr, pi_family, random_cfg, random_expr, random_suite,
    span_best,
)

RESULTS = []

SUITE_SIZE = 500
SUITE_SEED = 20040101


def report(n, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] AC{n:>2} {title}" + (f" -- {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite():
    exprs = random_suite(SUITE_SIZE, SUITE_SEED, max_ops=8)
    assert all(op_count(e) <= 8 for e in exprs)
    return exprs


def test_ac01_piano_membership():
    t0 = time.perf_counter()
    lang = language(piano_expr())
    yes = ["necessarily we play piano", "must we play piano",
           "we must play piano", "we play piano necessarily"]
    no = ["we play necessarily piano", "necessarily must we play piano"]
    ok = all(tuple(s.split()) in lang for s in yes) and not any(tuple(s.split()) in lang for s in no)
    dt = time.perf_counter() - t0
    report(1, "piano sentence membership", ok and dt < 1.0, f"{dt * 1000:.1f} ms")


def test_ac02_comb_example():
    t0 = time.perf_counter()
    got = comb_pair(marked("a ◇ b b ◇ c"), marked("d ◇ e"))
    want = {marked(" ".join(t)) for t in [
        "a◇bb◇c◇d◇e", "a◇bb◇d◇c◇e", "a◇bb◇d◇e◇c",
        "a◇d◇bb◇c◇e", "a◇d◇bb◇e◇c", "a◇d◇e◇bb◇c",
        "d◇a◇bb◇c◇e", "d◇a◇bb◇e◇c", "d◇a◇e◇bb◇c",
        "d◇e◇a◇bb◇c",
    ]}
    dt = time.perf_counter() - t0
    report(2, "comb worked example (10 sequences)", got == want and dt < 1.0, f"{dt * 1000:.1f} ms")


def test_ac03_sigma_intermediate():
    got = sigma(parse_expr_text("||(a, a, b)"))
    want = {marked("b ◇ a ◇ a"), marked("a ◇ b ◇ a"), marked("a ◇ a ◇ b")}
    report(3, "sigma(||(a, a, b))", got == want)


def test_ac04_width_recursion_vs_cuts(suite):
    t0 = time.perf_counter()
    failures = 0
    for e in suite:
        store = CutStore(build_graph(e))
        cuts = [store.cut(c) for c in enumerate_cuts(store)]
        g = store.graph
        w = max(map(len, cuts))
        z = max(len(c) for c in cuts if all(is_l_free(g, v) for v in c))
        failures += (width_of(e), zero_width_of(e)) != (w, z)
    dt = time.perf_counter() - t0
    report(4, f"width/0-width recursion = max cut length on {len(suite)} expressions",
           failures == 0 and dt < 60, f"{failures} failures, {dt:.1f} s")


def test_ac05_cut_count_bound(suite):
    violations = 0
    for e in suite:
        violations += not check_cut_bound(CutStore(build_graph(e))).holds
    exact = True
    for i in (1, 2, 3):
        for k in (2, 3, 4):
            r = check_cut_bound(CutStore(build_graph(pi_family(i, k))))
            violations += not r.holds
            exact &= r.count == (2 * i) ** k + 2 and r.vertices == 2 * i * k + 2 and r.width == k
    report(5, "cut-count bound, tight family counts exact", violations == 0 and exact,
           f"{violations} violations")


def test_ac06_graph_language_equals_semantics(suite):
    failures = sum(graph_language(CutStore(build_graph(e))) != language(e) for e in suite)
    report(6, f"graph language = set semantics on {len(suite)} expressions", failures == 0,
           f"{failures} failures")


def test_ac07_recognition_vs_brute_force():
    rng = random.Random(7007)
    t0 = time.perf_counter()
    failures = positives = 0
    n = 300
    for _ in range(n):
        e = random_expr(rng, max_ops=8)
        lang = sorted(language(e))
        g = random_cfg(rng, sample=rng.choice(lang) if rng.random() < 0.5 else None)
        want = any(earley_recognize_string(g, w) for w in lang)
        positives += want
        failures += recognize(g, e) != want
    dt = time.perf_counter() - t0
    report(7, f"recognizer = brute-force intersection on {n} pairs",
           failures == 0 and dt < 120, f"{failures} failures, {positives} non-empty, {dt:.1f} s")


def test_ac08_viterbi_exact():
    rng = random.Random(8008)
    failures = done = 0
    while done < 100:
        e = random_expr(rng, max_ops=8)
        g = random_cfg(rng, weighted=True, sample=rng.choice(sorted(language(e))))
        want = brute_best_weight(g, e)
        if want is None:
            continue
        done += 1
        got = best_string(g, e)
        if got is None:
            failures += 1
            continue
        words, w = got
        failures += not (w == want and words in language(e) and span_best(g, words) == w)
    report(8, f"best-string weight exact on {done} weighted instances", failures == 0,
           f"{failures} failures")


def test_ac09_laziness():
    rng = random.Random(9009)
    bad = checked = 0
    while checked < 200:
        e = random_expr(rng, max_ops=8)
        if "Interleave" in repr(e):
            continue
        checked += 1
        graph = build_graph(e)
        s = ParseSession(random_cfg(rng), graph).run()
        bad += width_of(e) != 1 or len(s.cuts) > graph.num_vertices
    total = len(enumerate_cuts(CutStore(build_graph(piano_expr()))))
    s = ParseSession(parse_grammar_text("S -> zzz"), piano_expr()).run()
    ok = bad == 0 and len(s.cuts) < total
    report(9, "interleave-free width 1 and lazy cut interning", ok,
           f"{bad} lattice failures; unmatched grammar interned {len(s.cuts)} of {total} cuts")


def test_ac10_string_earley_baseline():
    g = parse_grammar_text("S -> a S b\nS ->")
    ok = all(earley_recognize_string(g, "a" * n + "b" * n) for n in range(11))
    ok &= not any(earley_recognize_string(g, "a" * n + "b" * (n - 1)) for n in range(1, 11))
    ok &= grammar_size(g) == 5
    report(10, "string Earley on a^n b^n, grammar size 5", ok)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
