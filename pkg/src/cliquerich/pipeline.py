"""Iterative pseudo-clique thresholding that isolates SUpernodes.

Each iteration picks a weight threshold from a percentile of the current
edge weights, runs a pseudo-K_k census at that threshold, and rebuilds the
graph on the same vertices keeping only edges that took part in at least
one qualifying subset, re-weighted by their participation. The loop stops
when the qualifying count repeats, the graph runs out of edges, or the
percentile schedule is used up. Vertices still touching an edge are the
SUpernodes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .census import pseudo_census
from .errors import PipelineError
from .graph import Graph

__all__ = [
    "PercentileSchedule",
    "IterationRecord",
    "PipelineTrace",
    "percentile_value",
    "run_iteration",
    "run_pipeline",
    "DEFAULT_SCHEDULE",
]

HALT_CONVERGED = "converged"
HALT_EDGELESS = "edgeless"
HALT_EXHAUSTED = "schedule-exhausted"


def _halving(length: int) -> tuple[float, ...]:
    p = [50.0, 50.0]
    while len(p) < length:
        p.append((100.0 + p[-1]) / 2.0)
    return tuple(p[:length])


@dataclass(frozen=True)
class PercentileSchedule:
    entries: tuple[float, ...]

    def __post_init__(self):
        if not self.entries:
            raise PipelineError("percentile schedule is empty")
        for p in self.entries:
            if not (0 < p <= 100):
                raise PipelineError(f"percentile {p} outside (0, 100]")

    @classmethod
    def default(cls, length: int = 10) -> "PercentileSchedule":
        """50, 50, then each entry halves the remaining distance to 100."""
        return cls(_halving(length))

    @classmethod
    def from_text(cls, text: str) -> "PercentileSchedule":
        """JSON list, or numbers separated by whitespace/commas."""
        text = text.strip()
        try:
            values = json.loads(text)
        except json.JSONDecodeError:
            values = text.replace(",", " ").split()
        try:
            return cls(tuple(float(x) for x in values))
        except (TypeError, ValueError):
            raise PipelineError("schedule must be a list of numbers") from None

    def __len__(self):
        return len(self.entries)


DEFAULT_SCHEDULE = PercentileSchedule.default()


def percentile_value(weights: Sequence[float], p: float) -> float:
    """Nearest-rank percentile: the ``ceil(p/100 * m)``-th smallest value."""
    w = np.sort(np.asarray(weights, dtype=np.float64))
    if w.size == 0:
        raise PipelineError("percentile of an empty set")
    if not (0 < p <= 100):
        raise PipelineError(f"percentile {p} outside (0, 100]")
    rank = math.ceil(Fraction(p) * w.size / 100)
    return float(w[max(rank, 1) - 1])


@dataclass
class IterationRecord:
    iteration: int
    graph_index: int
    percentile: float
    threshold: float
    total: int
    surviving_edges: int
    vertex_counts: np.ndarray

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "graph_index": self.graph_index,
            "percentile": self.percentile,
            "threshold": self.threshold,
            "total": self.total,
            "surviving_edges": self.surviving_edges,
            "vertex_counts": [int(x) for x in self.vertex_counts],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IterationRecord":
        return cls(
            iteration=int(d["iteration"]),
            graph_index=int(d["graph_index"]),
            percentile=float(d["percentile"]),
            threshold=float(d["threshold"]),
            total=int(d["total"]),
            surviving_edges=int(d["surviving_edges"]),
            vertex_counts=np.asarray(d["vertex_counts"], dtype=np.int64),
        )

    def __eq__(self, other):
        if not isinstance(other, IterationRecord):
            return NotImplemented
        a, b = self.to_dict(), other.to_dict()
        return a == b


@dataclass(eq=False)
class PipelineTrace:
    n: int
    k: int
    records: list[IterationRecord]
    supernodes: tuple[int, ...]
    halt_reason: str
    final_graph: Graph | None = field(default=None, repr=False)
    labels: tuple[str, ...] | None = field(default=None, repr=False)
    hard_cut: bool = False
    graphs: list[Graph] | None = field(default=None, repr=False)

    def supernode_labels(self) -> list[str]:
        if self.labels is None:
            return [str(v) for v in self.supernodes]
        return [self.labels[v] for v in self.supernodes]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "hard_cut": self.hard_cut,
            "halt_reason": self.halt_reason,
            "supernodes": list(self.supernodes),
            "supernode_labels": self.supernode_labels(),
            "labels": list(self.labels) if self.labels is not None else None,
            "iterations": [r.to_dict() for r in self.records],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PipelineTrace":
        labels = d.get("labels")
        return cls(
            n=int(d["n"]),
            k=int(d["k"]),
            records=[IterationRecord.from_dict(r) for r in d["iterations"]],
            supernodes=tuple(int(v) for v in d["supernodes"]),
            halt_reason=d["halt_reason"],
            labels=tuple(labels) if labels is not None else None,
            hard_cut=bool(d.get("hard_cut", False)),
        )

    def __eq__(self, other):
        if not isinstance(other, PipelineTrace):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def run_iteration(
    g: Graph,
    k: int,
    p: float,
    iteration: int = 0,
    hard_cut: bool = False,
    workers: int | None = 1,
) -> tuple[Graph, IterationRecord]:
    """One thresholding round on `g`.

    The threshold is the `p`-th nearest-rank percentile of the current edge
    weights. The next graph keeps the edges with positive pseudo-K_k
    participation, weighted by it. With `hard_cut`, edges whose new weight
    falls below the `p`-th percentile of the new weights are dropped too.
    """
    if g.num_edges == 0:
        raise PipelineError("cannot iterate on an edgeless graph")
    w = percentile_value(g.edge_weights, p)
    table = pseudo_census(g, k, w, workers=workers)
    part = table.edge_count_array().astype(np.float64)
    keep = part > 0
    if hard_cut and keep.any():
        keep &= part >= percentile_value(part[keep], p)
    g_next = g.edge_subgraph(keep, part)
    record = IterationRecord(
        iteration=iteration,
        graph_index=iteration + 1,
        percentile=float(p),
        threshold=w,
        total=table.total,
        surviving_edges=g_next.num_edges,
        vertex_counts=table.vertex_counts.copy(),
    )
    return g_next, record


def run_pipeline(
    g0: Graph,
    k: int = 5,
    schedule: PercentileSchedule | None = None,
    hard_cut: bool = False,
    workers: int | None = 1,
    keep_graphs: bool = False,
) -> PipelineTrace:
    """Iterate :func:`run_iteration` over `schedule` and report SUpernodes.

    Halts after the first iteration (from the second on) whose qualifying
    count equals the previous one, after an iteration that leaves no
    edges, or at the end of the schedule. SUpernodes are the non-isolated
    vertices of the last graph produced. With `keep_graphs` the trace also
    holds every graph ``G_0, G_1, ...`` visited.
    """
    if k < 2:
        raise PipelineError(f"k must be >= 2, got {k}")
    if g0.num_edges == 0:
        raise PipelineError("input graph has no edges")
    schedule = schedule or DEFAULT_SCHEDULE
    g = g0
    records: list[IterationRecord] = []
    graphs = [g0] if keep_graphs else None
    reason = HALT_EXHAUSTED
    for i, p in enumerate(schedule.entries):
        g, rec = run_iteration(g, k, p, iteration=i, hard_cut=hard_cut, workers=workers)
        records.append(rec)
        if graphs is not None:
            graphs.append(g)
        if g.num_edges == 0:
            reason = HALT_EDGELESS
            break
        if i >= 1 and rec.total == records[-2].total:
            reason = HALT_CONVERGED
            break
    return PipelineTrace(
        n=g0.n,
        k=k,
        records=records,
        supernodes=tuple(g.non_isolated()),
        halt_reason=reason,
        final_graph=g,
        labels=g0.labels,
        hard_cut=hard_cut,
        graphs=graphs,
    )
