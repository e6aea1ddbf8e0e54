"""End-to-end acceptance checks for the packing/covering solver.

Each test covers one numbered criterion and prints a single
"[criterion N] PASS/FAIL" line (run with -s to see them on success).
Criterion 9 is a soft scaling check: it reports timing but only fails
on unsound output, never on the clock.
"""

import time
from dataclasses import dataclass

import pytest

from scycle import (Graph, SplitMix64, enumerate_cycles, find_long_s_cycle,
                    hitting_bound, is_long_s_cycle, long_cycle_through,
                    max_packing, min_hitting_set, pack_cycles,
                    random_cubic_multigraph, s_threshold, solve,
                    verify_outcome)
from scycle.cli import _clique_union_edges

from conftest import c6, gnp_edges, k4, petersen
from test_cubic import _check_multigraph_packing

P_CHOICES = (0.1, 0.2, 0.3, 0.4, 0.5)


def _line(num, ok, detail=""):
    tail = f" -- {detail}" if detail else ""
    print(f"[criterion {num}] {'PASS' if ok else 'FAIL'}{tail}")


@dataclass(frozen=True)
class Run:
    graph: Graph
    s: frozenset
    k: int
    ell: int
    outcome: object
    wall: float


@pytest.fixture(scope="module")
def corpus():
    """520 seeded random instances shared by criteria 1-4 and 8."""
    rng = SplitMix64(0x5EED_2026)
    runs = []
    for _ in range(520):
        n = 5 + rng.below(26)
        p = P_CHOICES[rng.below(len(P_CHOICES))]
        g = Graph(n, gnp_edges(n, p, rng))
        k = 1 + rng.below(4)
        ell = 1 + rng.below(7)
        s = frozenset(rng.sample(range(n), 1 + rng.below(n)))
        t0 = time.perf_counter()
        outcome = solve(g, s, k, ell)
        runs.append(Run(g, s, k, ell, outcome, time.perf_counter() - t0))
    return runs


def test_criterion_1_every_packing_verifies(corpus):
    total = sum(r.wall for r in corpus)
    packings = [r for r in corpus if r.outcome.kind == "packing"]
    bad = [r for r in packings
           if not verify_outcome(r.graph, r.s, r.k, r.ell, r.outcome).ok]
    ok = len(corpus) >= 500 and not bad and total < 60.0
    _line(1, ok, f"{len(packings)} packings out of {len(corpus)} instances, "
                 f"solve time {total:.1f}s (< 60s)")
    assert len(corpus) >= 500
    assert not bad, f"{len(bad)} packings failed verification"
    assert total < 60.0, f"corpus took {total:.1f}s"


def test_criterion_2_hitting_sets_kill_all_long_cycles(corpus):
    hits = [r for r in corpus if r.outcome.kind == "hitting"]
    checked_exhaustively = 0
    for r in hits:
        x = r.outcome.hitting_set
        residual = r.graph.without(x)
        assert find_long_s_cycle(residual, r.s, r.ell) is None, \
            f"long terminal cycle survives X on n={r.graph.n}"
        if r.graph.n <= 16:
            checked_exhaustively += 1
            for c in enumerate_cycles(residual, cap=16):
                assert not is_long_s_cycle(c, r.s, r.ell), \
                    f"enumeration found survivor {c}"
    _line(2, True, f"{len(hits)} hitting sets residual-free, "
                   f"{checked_exhaustively} confirmed by enumeration")


def test_criterion_3_hitting_set_size_bound(corpus):
    checked = 0
    for r in hits_non_shortcut(corpus):
        checked += 1
        bound = hitting_bound(r.k, r.ell)
        assert len(r.outcome.hitting_set) <= bound + 1e-9, \
            f"|X|={len(r.outcome.hitting_set)} > {bound} at k={r.k} ell={r.ell}"
    _line(3, True, f"{checked} non-shortcut hitting sets within bound")


def hits_non_shortcut(corpus):
    return [r for r in corpus
            if r.outcome.kind == "hitting" and len(r.s) > r.k]


def test_criterion_4_packings_never_overclaim(corpus):
    small = [r for r in corpus
             if r.graph.n <= 16 and r.outcome.kind == "packing"]
    for r in small:
        opt = max_packing(r.graph, r.s, r.ell, cap=16)
        assert opt >= r.k, \
            f"solver packed k={r.k} but oracle max is {opt} (n={r.graph.n})"
    _line(4, True, f"{len(small)} small packings confirmed against the oracle")


def test_criterion_5_clique_union_tightness():
    cases = []
    for k in (2, 3):
        for ell in (3, 4):
            n, edges = _clique_union_edges(k, ell)
            g = Graph(n, edges)
            s = range(n)
            outcome = solve(g, s, k, ell)
            assert outcome.kind == "hitting", f"k={k} ell={ell} gave a packing"
            assert max_packing(g, s, ell, cap=n) == k - 1
            assert len(min_hitting_set(g, s, ell, cap=n)) == (k - 1) * ell
            cases.append((k, ell))
    _line(5, True, f"{len(cases)} clique-union cases: max packing k-1, "
                   f"min hitting (k-1)*ell")


def test_criterion_6_cubic_multigraph_peeling():
    rng = SplitMix64(0xC0B1C)
    four_way = 0
    for _ in range(200):
        n = 40 + 2 * rng.below(41)  # even, 40..120
        mg = random_cubic_multigraph(n, rng)
        cycles = pack_cycles(mg, 2)
        assert len(cycles) == 2
        _check_multigraph_packing(mg, cycles)
        if n >= s_threshold(4):
            four_way += 1
            cycles = pack_cycles(mg, 4)
            assert len(cycles) == 4
            _check_multigraph_packing(mg, cycles)
    _line(6, True, f"200 multigraphs peeled for k=2, {four_way} also for k=4")


def _longest_through(g):
    best = {v: 0 for v in g.vertices()}
    for c in enumerate_cycles(g, cap=max(16, g.n)):
        for v in c.vertex_set():
            if c.length > best[v]:
                best[v] = c.length
    return best


def test_criterion_7_long_cycle_search_is_exact():
    rng = SplitMix64(0x10C4)
    graphs = [k4(), c6(), petersen()]
    while len(graphs) < 303:
        n = 4 + rng.below(9)
        graphs.append(Graph(n, gnp_edges(n, 0.1 + 0.4 * rng.random(), rng)))
    pairs = 0
    for g in graphs:
        best = _longest_through(g)
        for v in g.vertices():
            for ell in range(1, g.n + 2):
                pairs += 1
                got = long_cycle_through(g, v, ell)
                need = max(3, ell)
                if got is None:
                    assert best[v] < need, \
                        f"missed a {best[v]}-cycle through {v} at ell={ell}"
                else:
                    assert v in got.vertex_set() and got.length >= need
    _line(7, True, f"{len(graphs)} graphs, {pairs} (v, ell) pairs agree "
                   f"with enumeration")


def test_criterion_8_scores_increase_and_iterations_bounded(corpus):
    for r in corpus:
        cap = s_threshold(r.k) * (r.k + len(r.s))
        assert r.outcome.iterations <= cap, \
            f"{r.outcome.iterations} iterations > cap {cap}"
        scores = [rec.score for rec in r.outcome.trace]
        assert all(a < b for a, b in zip(scores, scores[1:])), \
            f"score not strictly increasing: {scores}"
    _line(8, True, f"monotone scores and bounded iterations on "
                   f"{len(corpus)} runs")


def test_criterion_9_scaling_report():
    rng = SplitMix64(0xB16)
    n, k, ell = 10_000, 3, 5
    p = 2 * 30_000 / (n * (n - 1))
    g = Graph(n, gnp_edges(n, p, rng))
    s = frozenset(rng.sample(range(n), 50))
    t0 = time.perf_counter()
    outcome = solve(g, s, k, ell)
    wall = time.perf_counter() - t0
    if outcome.kind == "packing":
        assert verify_outcome(g, s, k, ell, outcome).ok
    else:
        assert find_long_s_cycle(g.without(outcome.hitting_set),
                                 s, ell) is None
    cap = s_threshold(k) * (k + len(s))
    m = sum(1 for _ in g.edges())
    _line(9, True, f"n={n} m={m} solved in {wall:.2f}s "
                   f"(soft target < 10s), {outcome.kind} after "
                   f"{outcome.iterations}/{cap} iterations")
