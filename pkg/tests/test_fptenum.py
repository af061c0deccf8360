import pytest

from rpqkit.fptenum import Akwa, LongPath, SteUnion, enumerate_fpt
from rpqkit.graph import PointedGraph
from rpqkit.oracle import oracle
from rpqkit.ste import recognize_ste

from helpers import graph_of, random_instance


def check_stream(got, truth, by_length=True):
    assert len(got) == len(set(got))
    assert set(got) == truth
    if by_length:
        assert all(len(a) <= len(b) for a, b in zip(got, got[1:]))


def test_long_path_spec_derivative():
    assert LongPath(3).derive("ab") == LongPath(1)
    assert LongPath(1).derive("abc") == LongPath(0)


def test_akwa_spec_derivative():
    spec = Akwa(2, ("b",))
    assert spec.derive("a").states == {("A", 1)}
    after = spec.derive("aa")
    assert after.states == {("A", 2)}
    assert after.derive("b").states == {("S",)}
    assert after.derive("a").states == {("S",)}
    assert not after.derive("bb").states


def test_ste_union_derivative():
    union = SteUnion((recognize_ste("a*b"),))
    assert any(p.accepts_empty() for p in union.derive("aab").profiles)
    assert not union.derive("ba").profiles


def test_long_path_enumeration(rng):
    for _ in range(30):
        pg = random_instance(rng, rng.randint(2, 7), "ab", 0.3)
        k = rng.randint(0, 4)
        truth = {p for p in oracle(pg, "(a+b)*", "simple") if len(p) >= k}
        check_stream(list(enumerate_fpt(pg, LongPath(k))), truth)


def test_akwa_enumeration(rng):
    for _ in range(30):
        pg = random_instance(rng, rng.randint(2, 7), "ab", 0.35)
        k, w = rng.randint(0, 3), rng.choice(["", "b", "ab"])
        expr = f"a{{{k}}}" + (f"({' '.join(w)})?" if w else "") + "a*"
        check_stream(list(enumerate_fpt(pg, Akwa(k, tuple(w)))), oracle(pg, expr, "simple"))


@pytest.mark.parametrize("semantics", ["simple", "trail"])
def test_ste_enumeration(rng, semantics):
    for _ in range(30):
        pg = random_instance(rng, rng.randint(2, 7), "ab", 0.3)
        for expr in ["a*b", "a{2}a*", "aba*", "(a+b){2}a*"]:
            check_stream(list(enumerate_fpt(pg, expr, semantics)), oracle(pg, expr, semantics))


def test_long_path_trails(rng):
    for _ in range(20):
        pg = random_instance(rng, rng.randint(2, 6), "ab", 0.3)
        truth = {p for p in oracle(pg, "(a+b)*", "trail") if len(p) >= 2}
        check_stream(list(enumerate_fpt(pg, LongPath(2), "trail")), truth)


def test_arrival_order_yields_same_set(rng):
    pg = random_instance(rng, 7, "ab", 0.4)
    shortest = set(enumerate_fpt(pg, "a*b"))
    assert set(enumerate_fpt(pg, "a*b", order="arrival")) == shortest


def test_rejections():
    pg = PointedGraph(graph_of("s a t"), "s", "t")
    with pytest.raises(ValueError):
        enumerate_fpt(pg, "(aa)*")
    with pytest.raises(ValueError):
        enumerate_fpt(pg, "a*", "arbitrary")
    with pytest.raises(ValueError):
        enumerate_fpt(pg, Akwa(1, ()), "trail")
