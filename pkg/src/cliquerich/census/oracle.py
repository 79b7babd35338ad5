"""Unpruned enumeration of every k-subset; the reference for the kernels."""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from ..errors import CensusError, OracleTooLargeError

ORACLE_LIMIT = 10**7


def _connected(subset, positive):
    start = subset[0]
    seen = {start}
    frontier = [start]
    while frontier:
        a = frontier.pop()
        for b in subset:
            if b not in seen and (a, b) in positive:
                seen.add(b)
                frontier.append(b)
    return len(seen) == len(subset)


def brute_force_census(g, k: int, mode: str = "exact", threshold: float | None = None):
    """Census by checking all ``C(n, k)`` subsets directly.

    Same contract as ``exact_census`` (``mode="exact"``) and
    ``pseudo_census`` (``mode="pseudo"`` with `threshold`). Refuses
    instances with more than ``ORACLE_LIMIT`` subsets.
    """
    from . import ParticipationTable

    if not 2 <= k <= g.n:
        raise CensusError(f"k must satisfy 2 <= k <= n={g.n}, got {k}")
    if math.comb(g.n, k) > ORACLE_LIMIT:
        raise OracleTooLargeError(f"C({g.n}, {k}) subsets exceeds oracle limit {ORACLE_LIMIT}")
    if mode not in ("exact", "pseudo"):
        raise CensusError(f"unknown census mode {mode!r}")
    if mode == "pseudo" and (threshold is None or threshold < 0):
        raise CensusError("pseudo mode needs a non-negative threshold")

    weight = {}
    for u, v, w in g.weighted_edges():
        weight[(u, v)] = w
        weight[(v, u)] = w
    positive = {e for e, w in weight.items() if w > 0}

    vcount = [0] * g.n
    ecount = {e: 0 for e in g.edges()}
    total = 0
    for subset in combinations(range(g.n), k):
        pairs = list(combinations(subset, 2))
        if mode == "exact":
            if not all(p in weight for p in pairs):
                continue
            counted = pairs
        else:
            ws = sorted(weight.get(p, 0.0) for p in pairs)
            median = ws[len(ws) // 2]
            if median < threshold or not _connected(subset, positive):
                continue
            counted = [p for p in pairs if p in positive]
        total += 1
        for v in subset:
            vcount[v] += 1
        for p in counted:
            ecount[p] += 1

    return ParticipationTable(
        k=k,
        mode=mode,
        total=total,
        vertex_counts=np.asarray(vcount, dtype=np.int64),
        edge_counts=ecount,
        threshold=None if mode == "exact" else float(threshold),
        graph_fingerprint=g.fingerprint,
        labels=g.labels,
    )
