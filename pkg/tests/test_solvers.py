import pytest

from rpqkit.graph import PointedGraph
from rpqkit.oracle import oracle
from rpqkit.solvers import (
    BudgetExceeded,
    PreconditionError,
    akwa_solver,
    cuttable_ste,
    exhaustive_simple,
    exhaustive_trail,
    flps_long_path,
    paths_matching_word,
    simple_path_at_most_k,
    trail_ste,
    zero_bordered_ste,
)
from rpqkit.ste import recognize_ste

from helpers import graph_of, random_instance


def agrees(found, truth, shortest=False):
    if found is None:
        return not truth
    if found not in truth:
        return False
    return not shortest or len(found) == min(len(p) for p in truth)


def run_against_oracle(rng, exprs, solve, semantics, rounds=60, labels="ab"):
    for _ in range(rounds):
        pg = random_instance(rng, rng.randint(3, 8), labels, 0.3)
        expr = rng.choice(exprs)
        truth = oracle(pg, expr, semantics)
        for shortest in (False, True):
            assert agrees(solve(pg, expr, shortest), truth, shortest), (expr, pg)


def test_zero_bordered(rng):
    exprs = ["aa*", "(a+b)(a+b)a*", "a*b?", "a*(a+b)(a+b)", "a?a*b?"]
    run_against_oracle(rng, exprs, lambda pg, e, sh: zero_bordered_ste(pg, recognize_ste(e), sh), "simple")


def test_zero_bordered_precondition():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    with pytest.raises(PreconditionError):
        zero_bordered_ste(pg, recognize_ste("a*b"))
    with pytest.raises(ValueError):
        zero_bordered_ste(pg, recognize_ste("ab?a*"))


def test_cuttable(rng):
    exprs = ["a*b", "aab*", "aaba*", "abc*", "ba*b", "a*bb"]
    run_against_oracle(rng, exprs, lambda pg, e, sh: cuttable_ste(pg, recognize_ste(e), want_shortest=sh), "simple", labels="abc")


def test_cuttable_with_color_coding_backend(rng):
    exprs = ["a*b", "aab*", "(a+b)(a+b)b"]
    run_against_oracle(
        rng, exprs, lambda pg, e, sh: cuttable_ste(pg, recognize_ste(e), want_shortest=sh, bounded="color"), "simple", 30
    )


def test_cuttable_budget():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    with pytest.raises(BudgetExceeded):
        cuttable_ste(pg, recognize_ste("aaaab*"), budget=3)


def test_trail(rng):
    exprs = ["aab*", "aaab*", "aba*", "aaba*", "a*b", "a*ba", "ab*a"]
    run_against_oracle(rng, exprs, lambda pg, e, sh: trail_ste(pg, recognize_ste(e), want_shortest=sh), "trail")


def test_trail_conflict_budget():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    with pytest.raises(BudgetExceeded):
        trail_ste(pg, recognize_ste("aaaba*"), conflict_budget=2)


def test_exhaustive(rng):
    exprs = ["(aa)*", "a*ba*", "(ab)*"]
    run_against_oracle(rng, exprs, lambda pg, e, sh: exhaustive_simple(pg.graph, pg.source, pg.target, e), "simple")
    run_against_oracle(rng, exprs, lambda pg, e, sh: exhaustive_trail(pg, e), "trail")


def test_flps(rng):
    for _ in range(100):
        pg = random_instance(rng, rng.randint(3, 8), "ab", 0.3)
        k = rng.randint(0, 5)
        truth = {p for p in oracle(pg, "(a+b)*", "simple") if len(p) >= k}
        assert agrees(flps_long_path(pg, k), truth)
        assert agrees(flps_long_path(pg, k, want_shortest=True), truth, True)


def test_short_path_helper():
    pg = PointedGraph(graph_of("s a x", "x a t"), "s", "t")
    assert len(simple_path_at_most_k(pg, 2)) == 2
    assert simple_path_at_most_k(pg, 1) is None


def test_akwa(rng):
    for _ in range(100):
        pg = random_instance(rng, rng.randint(3, 8), "ab", 0.35)
        k = rng.randint(0, 4)
        w = rng.choice(["", "a", "b", "ab", "bb"])
        expr = f"a{{{k}}}" + (f"({' '.join(w)})?" if w else "") + "a*"
        truth = oracle(pg, expr, "simple")
        assert agrees(akwa_solver(pg, k, tuple(w)), truth)
        assert agrees(akwa_solver(pg, k, tuple(w), want_shortest=True), truth, True)


def test_akwa_budget():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    with pytest.raises(BudgetExceeded):
        akwa_solver(pg, 1, ("b", "b", "b"))


def test_paths_matching_word():
    g = graph_of("s a x", "x b t", "y a x")
    assert {p.start for p in paths_matching_word(g, "ab")} == {"s", "y"}
    assert paths_matching_word(g, "ab", start="s")[0].end == "t"
