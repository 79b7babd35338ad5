"""Rich-club, Super rich-club and rich edge-club membership and coefficients.

All memberships use strict inequality against the threshold. Coefficients
that cannot be formed (fewer than two members, or a zero denominator) are
returned as ``None`` and serialised as ``"undefined"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .census import ParticipationTable
from .errors import TableMismatchError
from .graph import Graph

__all__ = [
    "ClubReport",
    "rich_club",
    "super_rich_club",
    "edge_club",
    "weighted_participation_coefficient",
    "select_threshold_for_size",
    "UNDEFINED",
]

UNDEFINED = "undefined"

KINDS = ("rich-club", "super-rich-club", "rich-edge-club")


def _encode(x):
    return UNDEFINED if x is None else x


def _decode(x):
    return None if x == UNDEFINED or x is None else float(x)


@dataclass
class ClubReport:
    kind: str
    k: int
    threshold: float
    n: int
    members: tuple[int, ...]
    coefficient: float | None
    member_edges: dict[tuple[int, int], int] = field(default_factory=dict)
    club_edges: dict[tuple[int, int], float] = field(default_factory=dict)
    weight_threshold: float | None = None
    weighted_coefficient: float | None = None
    labels: tuple[str, ...] | None = field(default=None, repr=False)

    def member_labels(self) -> list[str]:
        if self.labels is None:
            return [str(v) for v in self.members]
        return [self.labels[v] for v in self.members]

    def club_graph(self) -> Graph:
        """The weighted club graph.

        For the edge club this keeps every vertex of the input graph; for
        the two vertex clubs it is re-indexed onto the members (the
        ``index_map`` points back to the input graph).
        """
        edges = list(self.club_edges)
        weights = list(self.club_edges.values())
        if self.kind == "rich-edge-club":
            return Graph(self.n, edges, weights, labels=self.labels)
        full = Graph(self.n, edges, weights, labels=self.labels)
        return full.induced_subgraph(self.members)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "threshold": self.threshold,
            "n": self.n,
            "members": list(self.members),
            "member_labels": self.member_labels(),
            "member_edges": [
                {"u": u, "v": v, "participation": c} for (u, v), c in self.member_edges.items()
            ],
            "club_edges": [
                {"u": u, "v": v, "weight": w} for (u, v), w in self.club_edges.items()
            ],
            "coefficient": _encode(self.coefficient),
            "weight_threshold": self.weight_threshold,
            "weighted_coefficient": _encode(self.weighted_coefficient),
            "labels": list(self.labels) if self.labels is not None else None,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClubReport":
        labels = d.get("labels")
        return cls(
            kind=d["kind"],
            k=int(d["k"]),
            threshold=d["threshold"],
            n=int(d["n"]),
            members=tuple(int(v) for v in d["members"]),
            coefficient=_decode(d["coefficient"]),
            member_edges={(r["u"], r["v"]): int(r["participation"]) for r in d["member_edges"]},
            club_edges={(r["u"], r["v"]): float(r["weight"]) for r in d["club_edges"]},
            weight_threshold=d.get("weight_threshold"),
            weighted_coefficient=_decode(d.get("weighted_coefficient")),
            labels=tuple(labels) if labels is not None else None,
        )


def _club_density(g: Graph, members: np.ndarray) -> tuple[float | None, np.ndarray]:
    inside = np.zeros(g.n, dtype=bool)
    inside[members] = True
    internal = inside[g.edge_u] & inside[g.edge_v]
    size = int(members.size)
    if size < 2:
        return None, internal
    return int(internal.sum()) / math.comb(size, 2), internal


def rich_club(g: Graph, j: float) -> ClubReport:
    """Vertices of degree greater than `j` and the density they induce."""
    members = np.flatnonzero(g.degrees() > j)
    coef, internal = _club_density(g, members)
    club_edges = {
        (u, v): w
        for u, v, w in zip(
            g.edge_u[internal].tolist(), g.edge_v[internal].tolist(), g.edge_weights[internal].tolist()
        )
    }
    return ClubReport(
        kind="rich-club",
        k=2,
        threshold=j,
        n=g.n,
        members=tuple(members.tolist()),
        coefficient=coef,
        club_edges=club_edges,
        labels=g.labels,
    )


def _check_table(g: Graph, table: ParticipationTable, k: int) -> None:
    if table.k != k:
        raise TableMismatchError(f"table was computed for k={table.k}, not k={k}")
    if table.n != g.n:
        raise TableMismatchError(f"table covers {table.n} vertices, graph has {g.n}")
    if table.graph_fingerprint is not None and table.graph_fingerprint != g.fingerprint:
        raise TableMismatchError("table was computed on a different graph")


def super_rich_club(
    g: Graph, k: int, j: float, table: ParticipationTable, t: float | None = None
) -> ClubReport:
    """Vertices with participation ``xi(v, k) > j``.

    The coefficient is the density of the subgraph the members induce in
    `g`; each internal edge of the club graph is weighted by its edge
    participation. Passing `t` also computes the weighted participation
    coefficient against edges of weight above `t`.
    """
    _check_table(g, table, k)
    members = np.flatnonzero(table.vertex_counts > j)
    coef, internal = _club_density(g, members)
    club_edges = {
        (u, v): table.edge_count(u, v)
        for u, v in zip(g.edge_u[internal].tolist(), g.edge_v[internal].tolist())
    }
    report = ClubReport(
        kind="super-rich-club",
        k=k,
        threshold=j,
        n=g.n,
        members=tuple(members.tolist()),
        coefficient=coef,
        club_edges=club_edges,
        labels=g.labels,
    )
    if t is not None:
        report.weight_threshold = t
        report.weighted_coefficient = weighted_participation_coefficient(g, report.members, t)
    return report


def weighted_participation_coefficient(
    g: Graph, members: Iterable[int], t: float = 0.0
) -> float | None:
    """Share of the weight above `t` carried by edges inside `members`.

    Both sums run over edges with weight greater than `t`; the numerator
    keeps only those with both endpoints in `members`. ``None`` when no
    edge weighs more than `t`.
    """
    inside = np.zeros(g.n, dtype=bool)
    idx = np.fromiter((int(v) for v in members), dtype=np.int64)
    inside[idx] = True
    w = g.edge_weights
    above = w > t
    denom = float(w[above].sum())
    if denom == 0.0:
        return None
    internal = above & inside[g.edge_u] & inside[g.edge_v]
    return float(w[internal].sum()) / denom


def edge_club(g: Graph, k: int, j: float, table: ParticipationTable) -> ClubReport:
    """Edges with ``xi({u, v}, k) > j`` and their endpoints.

    The coefficient is the participation carried by member edges over the
    participation of all edges, ``C(k, 2) * total``.
    """
    _check_table(g, table, k)
    if table.mode != "exact":
        raise TableMismatchError("edge club needs an exact-mode participation table")
    member_edges = {e: c for e, c in table.edge_counts.items() if c > j}
    members = sorted({v for e in member_edges for v in e})
    denom = math.comb(k, 2) * table.total
    coef = sum(member_edges.values()) / denom if denom else None
    return ClubReport(
        kind="rich-edge-club",
        k=k,
        threshold=j,
        n=g.n,
        members=tuple(members),
        coefficient=coef,
        member_edges=member_edges,
        club_edges={e: float(c) for e, c in member_edges.items()},
        labels=g.labels,
    )


def select_threshold_for_size(scores: Sequence[int], target: int) -> int:
    """Threshold whose club ``{v : scores[v] > j}`` is as close as possible
    to `target` members.

    Vertices with equal scores are kept together, so only a handful of
    club sizes are reachable. Ties in distance go to the smaller club.
    Among thresholds giving the chosen club the largest one is returned;
    for the empty club that is the maximum score.

    >>> select_threshold_for_size([5, 4, 3, 2, 1], 2)
    3
    """
    if target < 0:
        raise ValueError("target size must be non-negative")
    s = np.asarray(scores, dtype=np.int64)
    if s.size == 0:
        return 0
    distinct = np.unique(s)  # ascending
    # club above distinct[i] has size |{s > distinct[i]}|; largest threshold
    # giving that club is the next distinct score minus one.
    options = [(int(s.size), int(distinct[0]) - 1)]
    for i, d in enumerate(distinct):
        size = int((s > d).sum())
        thr = int(distinct[i + 1]) - 1 if i + 1 < distinct.size else int(d)
        options.append((size, thr))
    best_size, best_thr = min(options, key=lambda o: (abs(o[0] - target), o[0]))
    return best_thr
