"""Delay instrumentation for enumeration streams."""

from __future__ import annotations

import gc
import statistics
import time
from dataclasses import dataclass, field

from .graph import Graph, PointedGraph


@dataclass(frozen=True)
class DelayReport:
    """Timestamps of one enumeration session, in seconds.

    ``gaps[0]`` is the latency of the first output; the rest are the
    inter-arrival times between consecutive outputs.
    """

    gaps: tuple = ()
    total: float = 0.0
    outputs: list = field(default_factory=list, compare=False, repr=False)

    @property
    def count(self) -> int:
        return len(self.gaps)

    @property
    def first_output(self) -> float | None:
        return self.gaps[0] if self.gaps else None

    @property
    def inter_arrival(self) -> tuple:
        return self.gaps[1:]

    @property
    def max_delay(self) -> float:
        return max(self.inter_arrival, default=0.0)

    @property
    def median_delay(self) -> float:
        return statistics.median(self.inter_arrival) if self.inter_arrival else 0.0

    def summary(self) -> dict:
        return {
            "count": self.count,
            "first_output": self.first_output,
            "max_delay": self.max_delay,
            "median_delay": self.median_delay,
            "total": self.total,
        }


def bench_stream(stream, limit: int | None = None, keep_outputs: bool = False) -> DelayReport:
    """Pull up to ``limit`` items from ``stream`` and time each arrival.

    The garbage collector is paused while timing so collections do not show
    up as spurious delay spikes.
    """
    gaps = []
    kept = []
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = last = time.perf_counter()
        it = iter(stream)
        while limit is None or len(gaps) < limit:
            try:
                item = next(it)
            except StopIteration:
                break
            now = time.perf_counter()
            gaps.append(now - last)
            last = now
            if keep_outputs:
                kept.append(item)
        total = time.perf_counter() - start
    finally:
        if was_enabled:
            gc.enable()
    return DelayReport(tuple(gaps), total, kept)


@dataclass(frozen=True)
class BenchSession:
    instance: PointedGraph
    query: str = "(a+b)*"
    semantics: str = "simple"
    order: str | None = None
    limit: int | None = 100


def bench_delay(session: BenchSession, keep_outputs: bool = False) -> DelayReport:
    """Run one enumeration session and time its outputs."""
    from .engine import enumerate_answers

    stream = enumerate_answers(session.instance, session.query, session.semantics, session.order)
    return bench_stream(stream, session.limit, keep_outputs)


def layered_graph(layers: int) -> PointedGraph:
    """A chain of ``layers`` diamonds, giving 2**layers simple paths.

    Layer i goes from ``x<i>`` through ``y<i>`` (label a) or ``z<i>``
    (label b) to ``x<i+1>``.
    """
    edges = []
    for i in range(layers):
        edges += [
            (f"x{i}", "a", f"y{i}"),
            (f"y{i}", "a", f"x{i + 1}"),
            (f"x{i}", "b", f"z{i}"),
            (f"z{i}", "b", f"x{i + 1}"),
        ]
    return PointedGraph(Graph(edges, ["x0"]), "x0", f"x{layers}")


def delay_ratio(small: int = 8, large: int = 12, limit: int = 100, runs: int = 5, query: str = "(a+b)*") -> dict:
    """Median (over ``runs``) of the max inter-output delay for two layer counts."""
    medians = {}
    for layers in (small, large):
        session = BenchSession(layered_graph(layers), query, "simple", None, limit)
        medians[layers] = statistics.median(bench_delay(session).max_delay for _ in range(runs))
    return {
        "small": small,
        "large": large,
        "max_delay_small": medians[small],
        "max_delay_large": medians[large],
        "ratio": medians[large] / medians[small] if medians[small] > 0 else float("inf"),
    }
