"""Vertex and edge participation in complete and pseudo-complete subgraphs.

A census counts every k-vertex subset that qualifies (a clique in exact
mode; a connected subset whose upper-median pair weight reaches a threshold
in pseudo mode) and tallies, per vertex and per edge, how many qualifying
subsets contain it.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..errors import CensusError
from ..graph import Graph
from . import _kernels
from .oracle import brute_force_census

__all__ = [
    "ParticipationTable",
    "exact_census",
    "pseudo_census",
    "median_pair_weight",
    "brute_force_census",
    "degeneracy_order",
    "pairs_needed",
]


@dataclass(eq=False)
class ParticipationTable:
    """Result of one census run.

    ``vertex_counts[v]`` is the number of qualifying k-subsets containing
    `v`; ``edge_counts[(u, v)]`` (``u < v``, one entry per stored edge) the
    number containing both endpoints with the edge present.
    """

    k: int
    mode: str
    total: int
    vertex_counts: np.ndarray
    edge_counts: dict[tuple[int, int], int]
    threshold: float | None = None
    graph_fingerprint: str | None = None
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return int(self.vertex_counts.size)

    def edge_count(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self.edge_counts.get(key, 0)

    def edge_count_array(self) -> np.ndarray:
        return np.fromiter(self.edge_counts.values(), dtype=np.int64, count=len(self.edge_counts))

    def __eq__(self, other):
        if not isinstance(other, ParticipationTable):
            return NotImplemented
        return (
            self.k == other.k
            and self.mode == other.mode
            and self.total == other.total
            and self.threshold == other.threshold
            and np.array_equal(self.vertex_counts, other.vertex_counts)
            and self.edge_counts == other.edge_counts
        )

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "mode": self.mode,
            "threshold": self.threshold,
            "total": self.total,
            "graph": self.graph_fingerprint,
            "labels": list(self.labels) if self.labels is not None else None,
            "vertex_counts": [int(x) for x in self.vertex_counts],
            "edges": [
                {"u": u, "v": v, "count": int(c)} for (u, v), c in self.edge_counts.items()
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ParticipationTable":
        labels = d.get("labels")
        return cls(
            k=int(d["k"]),
            mode=d["mode"],
            total=int(d["total"]),
            vertex_counts=np.asarray(d["vertex_counts"], dtype=np.int64),
            edge_counts={(int(r["u"]), int(r["v"])): int(r["count"]) for r in d["edges"]},
            threshold=None if d.get("threshold") is None else float(d["threshold"]),
            graph_fingerprint=d.get("graph"),
            labels=tuple(labels) if labels is not None else None,
        )

    def to_csv_rows(self) -> list[list]:
        """One row per vertex, then one per edge: ``kind,u,v,label,count``."""
        rows: list[list] = [["kind", "u", "v", "label", "count"]]
        for v, c in enumerate(self.vertex_counts.tolist()):
            label = self.labels[v] if self.labels is not None else ""
            rows.append(["vertex", v, "", label, c])
        for (u, v), c in self.edge_counts.items():
            rows.append(["edge", u, v, "", c])
        return rows


def pairs_needed(k: int) -> int:
    """Minimum number of pairs at or above the threshold for the upper
    median of the ``C(k, 2)`` pair weights to reach it."""
    return math.ceil(math.comb(k, 2) / 2)


def median_pair_weight(g: Graph, subset: Iterable[int], k: int | None = None) -> float:
    """Upper median of the pair weights inside `subset`.

    All ``C(k, 2)`` pairs are included, absent pairs as 0. The value is the
    element at 1-based position ``floor(m / 2) + 1`` of the ascending sort.
    """
    s = list(subset)
    if len(set(s)) != len(s):
        raise CensusError("subset has repeated vertices")
    if k is not None and len(s) != k:
        raise CensusError(f"subset has {len(s)} vertices, expected {k}")
    if len(s) < 2:
        raise CensusError("median pair weight needs at least 2 vertices")
    idx = np.asarray(s, dtype=np.int64)
    if idx.min() < 0 or idx.max() >= g.n:
        raise CensusError("subset vertex out of range")
    iu, ju = np.triu_indices(len(s), k=1)
    w = np.sort(g.weight_matrix[idx[iu], idx[ju]])
    return float(w[w.size // 2])


def degeneracy_order(g: Graph) -> np.ndarray:
    """Vertices in smallest-last (degeneracy) removal order."""
    adj = g.adjacency
    deg = g.degrees().astype(np.int64).copy()
    removed = np.zeros(g.n, dtype=bool)
    order = np.empty(g.n, dtype=np.int64)
    big = np.iinfo(np.int64).max
    for i in range(g.n):
        v = int(np.argmin(np.where(removed, big, deg)))
        order[i] = v
        removed[v] = True
        deg -= adj[v]
    return order


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get("CLIQUERICH_WORKERS", "1"))
    if workers < 1:
        raise CensusError(f"worker count must be >= 1, got {workers}")
    return workers


def _check_k(g: Graph, k: int) -> None:
    if not isinstance(k, (int, np.integer)) or not 2 <= k <= g.n:
        raise CensusError(f"k must satisfy 2 <= k <= n={g.n}, got {k}")


def _run_split(kernel, args, leaders, n, m, workers):
    """Run `kernel` over cyclic slices of `leaders`, one private tally per
    worker, merged by summation."""
    workers = min(workers, max(1, leaders.size))
    parts = [np.ascontiguousarray(leaders[w::workers]) for w in range(workers)]
    vcs = [np.zeros(n, np.int64) for _ in range(workers)]
    ecs = [np.zeros(m, np.int64) for _ in range(workers)]
    if workers == 1:
        totals = [kernel(*args, parts[0], vcs[0], ecs[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futs = [pool.submit(kernel, *args, parts[w], vcs[w], ecs[w]) for w in range(workers)]
            totals = [f.result() for f in futs]
    return int(sum(totals)), np.sum(vcs, axis=0), np.sum(ecs, axis=0)


def _table(g, k, mode, threshold, total, vcount, ecount) -> ParticipationTable:
    return ParticipationTable(
        k=int(k),
        mode=mode,
        total=total,
        vertex_counts=vcount.astype(np.int64),
        edge_counts=dict(zip(g.edges(), ecount.tolist())),
        threshold=threshold,
        graph_fingerprint=g.fingerprint,
        labels=g.labels,
    )


def exact_census(g: Graph, k: int, workers: int | None = 1) -> ParticipationTable:
    """Count the k-cliques of `g` with per-vertex and per-edge participation.

    Vertices are processed in degeneracy order; each clique is found once,
    from its earliest vertex in that order. With ``workers > 1`` the
    earliest vertices are dealt round-robin to threads, each with private
    integer tallies, so results do not depend on the worker count.
    """
    _check_k(g, k)
    workers = resolve_workers(workers)
    order = degeneracy_order(g)
    adj = np.ascontiguousarray(g.adjacency[np.ix_(order, order)])
    eid = np.ascontiguousarray(g.edge_index[np.ix_(order, order)])
    leaders = np.arange(g.n - k + 1, dtype=np.int64)
    total, vrel, ecount = _run_split(
        _kernels.exact_kernel, (adj, eid, int(k)), leaders, g.n, g.num_edges, workers
    )
    vcount = np.empty(g.n, np.int64)
    vcount[order] = vrel
    return _table(g, k, "exact", None, total, vcount, ecount)


def pseudo_census(g: Graph, k: int, w: float, workers: int | None = 1) -> ParticipationTable:
    """Count pseudo-K_k subsets at weight threshold `w`.

    A k-subset qualifies when the subgraph of its positive-weight pairs is
    connected and its upper-median pair weight (absent pairs count as 0)
    is at least `w`. Participation is tallied for every vertex of a
    qualifying subset and for each positive-weight edge inside it.
    """
    _check_k(g, k)
    w = float(w)
    if not math.isfinite(w) or w < 0:
        raise CensusError(f"threshold must be finite and non-negative, got {w}")
    workers = resolve_workers(workers)
    wm = g.weight_matrix
    heavy = wm >= w
    np.fill_diagonal(heavy, False)
    hdeg = heavy.sum(axis=1)
    order = np.argsort(-hdeg, kind="stable")
    heavy_rel = np.ascontiguousarray(heavy[np.ix_(order, order)])
    pos_rel = np.ascontiguousarray((wm > 0)[np.ix_(order, order)])
    eid = np.ascontiguousarray(g.edge_index[np.ix_(order, order)])
    suffix_max = np.maximum.accumulate(hdeg[order][::-1])[::-1].astype(np.int64)
    leaders = np.arange(g.n - k + 1, dtype=np.int64)
    args = (heavy_rel, pos_rel, eid, np.ascontiguousarray(suffix_max), int(k), pairs_needed(k))
    total, vrel, ecount = _run_split(
        _kernels.pseudo_kernel, args, leaders, g.n, g.num_edges, workers
    )
    vcount = np.empty(g.n, np.int64)
    vcount[order] = vrel
    return _table(g, k, "pseudo", w, total, vcount, ecount)
