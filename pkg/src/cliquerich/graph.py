"""Immutable simple undirected weighted graphs.

Vertices are dense integer indices ``0..n-1``. Edges are stored once as
``(u, v)`` with ``u < v`` in lexicographic order, each with a non-negative
float64 weight (``1.0`` for unweighted input). A pair that is not stored has
implicit weight 0.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
import re
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphFormatError, UndefinedDensityError

__all__ = [
    "Graph",
    "density",
    "from_edge_list",
    "from_dense_matrix",
    "to_edge_list",
    "to_dense_matrix",
    "read_graph",
]

SYMMETRY_TOL = 1e-9

_N_DIRECTIVE = re.compile(r"^#\s*n\s*=\s*(\d+)\s*$")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


class Graph:
    """Simple undirected graph with non-negative edge weights.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (u, v)
        Unordered vertex pairs. Identical repeats are merged; a repeat with
        a different weight is an error.
    weights : iterable of float, optional
        One weight per entry of `edges`. Defaults to 1 for every edge.
    labels : sequence of str, optional
        Unique vertex names, one per vertex.
    index_map : sequence of int, optional
        For induced subgraphs, the original index of each vertex.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        weights: Iterable[float] | None = None,
        labels: Sequence[str] | None = None,
        index_map: Sequence[int] | None = None,
    ):
        n = int(n)
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        edges = list(edges)
        if weights is None:
            weights = [1.0] * len(edges)
        else:
            weights = [float(x) for x in weights]
            if len(weights) != len(edges):
                raise GraphFormatError("weights and edges differ in length")

        seen: dict[tuple[int, int], float] = {}
        for (a, b), w in zip(edges, weights):
            a, b = int(a), int(b)
            if a == b:
                raise GraphFormatError(f"self-loop on vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise GraphFormatError(f"edge ({a}, {b}) out of range for n={n}")
            if not math.isfinite(w) or w < 0:
                raise GraphFormatError(f"edge ({a}, {b}) has invalid weight {w}")
            key = (a, b) if a < b else (b, a)
            if key in seen and seen[key] != w:
                raise GraphFormatError(
                    f"edge {key} repeated with conflicting weights {seen[key]} and {w}"
                )
            seen[key] = w

        keys = sorted(seen)
        u = np.array([k[0] for k in keys], dtype=np.int64)
        v = np.array([k[1] for k in keys], dtype=np.int64)
        w = np.array([seen[k] for k in keys], dtype=np.float64)
        self._init_arrays(n, u, v, w, labels, index_map)

    def _init_arrays(self, n, u, v, w, labels, index_map):
        self._n = n
        self._u = _readonly(u)
        self._v = _readonly(v)
        self._w = _readonly(w)
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != n:
                raise GraphFormatError(f"{len(labels)} labels given for {n} vertices")
            if len(set(labels)) != n:
                raise GraphFormatError("vertex labels must be unique")
        self._labels = labels
        self._index_map = tuple(int(i) for i in index_map) if index_map is not None else None

    @classmethod
    def _from_arrays(cls, n, u, v, w, labels=None, index_map=None) -> "Graph":
        # Caller guarantees u < v, lexicographic order, no duplicates, w >= 0.
        g = cls.__new__(cls)
        g._init_arrays(
            n,
            np.ascontiguousarray(u, dtype=np.int64),
            np.ascontiguousarray(v, dtype=np.int64),
            np.ascontiguousarray(w, dtype=np.float64),
            labels,
            index_map,
        )
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def num_edges(self) -> int:
        return int(self._u.size)

    @property
    def labels(self) -> tuple[str, ...] | None:
        return self._labels

    @property
    def index_map(self) -> tuple[int, ...] | None:
        return self._index_map

    @property
    def edge_u(self) -> np.ndarray:
        return self._u

    @property
    def edge_v(self) -> np.ndarray:
        return self._v

    @property
    def edge_weights(self) -> np.ndarray:
        return self._w

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self._u.tolist(), self._v.tolist()))

    def weighted_edges(self) -> list[tuple[int, int, float]]:
        return list(zip(self._u.tolist(), self._v.tolist(), self._w.tolist()))

    def label(self, v: int) -> str:
        self._check_vertex(v)
        return self._labels[v] if self._labels is not None else str(v)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self._n:
            raise GraphFormatError(f"vertex {v} out of range for n={self._n}")

    # -- cached dense views ----------------------------------------------

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Boolean n x n adjacency matrix of stored edges."""
        a = np.zeros((self._n, self._n), dtype=np.bool_)
        a[self._u, self._v] = True
        a[self._v, self._u] = True
        return _readonly(a)

    @cached_property
    def weight_matrix(self) -> np.ndarray:
        """Symmetric n x n weight matrix; absent pairs are 0."""
        m = np.zeros((self._n, self._n), dtype=np.float64)
        m[self._u, self._v] = self._w
        m[self._v, self._u] = self._w
        return _readonly(m)

    @cached_property
    def edge_index(self) -> np.ndarray:
        """n x n matrix of edge positions, -1 where there is no edge."""
        e = np.full((self._n, self._n), -1, dtype=np.int64)
        ids = np.arange(self.num_edges, dtype=np.int64)
        e[self._u, self._v] = ids
        e[self._v, self._u] = ids
        return _readonly(e)

    @cached_property
    def _degrees(self) -> np.ndarray:
        d = np.bincount(self._u, minlength=self._n) + np.bincount(self._v, minlength=self._n)
        return _readonly(d.astype(np.int64))

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(str(self._n).encode())
        h.update(self._u.tobytes())
        h.update(self._v.tobytes())
        h.update(self._w.tobytes())
        return h.hexdigest()[:16]

    # -- queries ---------------------------------------------------------

    def degrees(self) -> np.ndarray:
        return self._degrees

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return int(self._degrees[v])

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_vertex(v)
        return frozenset(np.flatnonzero(self.adjacency[v]).tolist())

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adjacency[u, v])

    def weight(self, u: int, v: int) -> float:
        self._check_vertex(u)
        self._check_vertex(v)
        return float(self.weight_matrix[u, v])

    def non_isolated(self) -> list[int]:
        return np.flatnonzero(self._degrees > 0).tolist()

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph on `vertices`, re-indexed in ascending original order.

        The returned graph's ``index_map`` gives the original index of each
        new vertex; weights are preserved.
        """
        keep = sorted(set(int(x) for x in vertices))
        for x in keep:
            self._check_vertex(x)
        new_id = np.full(self._n, -1, dtype=np.int64)
        new_id[keep] = np.arange(len(keep))
        mask = (new_id[self._u] >= 0) & (new_id[self._v] >= 0)
        labels = [self._labels[x] for x in keep] if self._labels is not None else None
        return Graph._from_arrays(
            len(keep),
            new_id[self._u[mask]],
            new_id[self._v[mask]],
            self._w[mask],
            labels=labels,
            index_map=keep,
        )

    def edge_subgraph(self, mask: np.ndarray, weights: np.ndarray | None = None) -> "Graph":
        """Same vertex set, keeping edges where `mask` is true.

        `weights`, when given, is aligned with the current edge order and
        replaces the stored weights of the kept edges.
        """
        mask = np.asarray(mask, dtype=bool)
        w = self._w if weights is None else np.asarray(weights, dtype=np.float64)
        if mask.shape != self._u.shape or w.shape != self._u.shape:
            raise GraphFormatError("mask/weights must align with the edge list")
        if np.any(w[mask] < 0) or not np.all(np.isfinite(w[mask])):
            raise GraphFormatError("edge weights must be finite and non-negative")
        return Graph._from_arrays(
            self._n, self._u[mask], self._v[mask], w[mask], labels=self._labels
        )

    # -- dunder ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
            and np.array_equal(self._w, other._w)
            and self._labels == other._labels
        )

    __hash__ = None

    def __repr__(self):
        return f"Graph(n={self._n}, edges={self.num_edges})"


def density(g: Graph) -> float:
    """Fraction of vertex pairs joined by an edge: ``2|E| / (n^2 - n)``."""
    if g.n < 2:
        raise UndefinedDensityError(f"density undefined for n={g.n} < 2")
    return 2.0 * g.num_edges / (g.n * g.n - g.n)


# -- ingestion -----------------------------------------------------------


def _parse_weight(tok: str, lineno: int) -> float:
    try:
        w = float(tok)
    except ValueError:
        raise GraphFormatError(f"weight {tok!r} is not a number", line=lineno) from None
    if not math.isfinite(w):
        raise GraphFormatError(f"weight {tok!r} is not finite", line=lineno)
    if w < 0:
        raise GraphFormatError(f"negative weight {w}", line=lineno)
    return w


def from_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse ``u v [w]`` records, one per line.

    ``#`` starts a comment. A comment line of the form ``# n=<count>`` fixes
    the vertex count (so trailing isolated vertices survive a round trip).
    If every vertex token is a non-negative integer the tokens are indices;
    otherwise tokens are treated as labels, numbered in order of first
    appearance.
    """
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        m = _N_DIRECTIVE.match(stripped)
        if m and n is None:
            n = int(m.group(1))
            continue
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        toks = body.split()
        if len(toks) not in (2, 3):
            raise GraphFormatError(
                f"expected 'u v [w]', got {len(toks)} fields", line=lineno
            )
        w = _parse_weight(toks[2], lineno) if len(toks) == 3 else 1.0
        if toks[0] == toks[1]:
            raise GraphFormatError(f"self-loop on vertex {toks[0]}", line=lineno)
        records.append((toks[0], toks[1], w, lineno))

    numeric = all(t.isdigit() for r in records for t in r[:2])
    labels = None
    if numeric:
        ids = [(int(a), int(b), w, ln) for a, b, w, ln in records]
        top = max((max(a, b) for a, b, _, _ in ids), default=-1) + 1
        if n is None:
            n = top
        elif top > n:
            raise GraphFormatError(f"vertex id {top - 1} exceeds declared n={n}")
    else:
        index: dict[str, int] = {}
        for a, b, _, _ in records:
            for t in (a, b):
                index.setdefault(t, len(index))
        ids = [(index[a], index[b], w, ln) for a, b, w, ln in records]
        labels = list(index)
        if n is not None and n != len(labels):
            raise GraphFormatError(f"declared n={n} but found {len(labels)} labels")
        n = len(labels)

    seen: dict[tuple[int, int], float] = {}
    for a, b, w, ln in ids:
        key = (a, b) if a < b else (b, a)
        if key in seen and seen[key] != w:
            raise GraphFormatError(
                f"edge {key} repeated with conflicting weight {w} (was {seen[key]})",
                line=ln,
            )
        seen[key] = w
    return Graph(n, list(seen), list(seen.values()), labels=labels)


def _split_rows(text: str) -> list[list[str]]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if any("," in ln for ln in lines):
        return [[c.strip() for c in row] for row in csv.reader(lines)]
    return [ln.split() for ln in lines]


def from_dense_matrix(text: str, tol: float = SYMMETRY_TOL) -> Graph:
    """Parse a square, symmetric, non-negative adjacency matrix.

    Accepts CSV or whitespace-delimited rows. A first row that is not
    numeric is taken as a header of vertex labels. Entries that differ from
    their transpose by at most `tol` are averaged; every positive entry
    becomes an edge carrying that weight.
    """
    rows = _split_rows(text)
    labels = None
    if rows:
        try:
            [float(x) for x in rows[0]]
        except ValueError:
            labels, rows = rows[0], rows[1:]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise GraphFormatError(f"matrix is not square ({n} rows)")
    try:
        a = np.array([[float(x) for x in r] for r in rows], dtype=np.float64).reshape(n, n)
    except ValueError as exc:
        raise GraphFormatError(f"non-numeric matrix entry: {exc}") from None
    if not np.all(np.isfinite(a)):
        raise GraphFormatError("matrix contains non-finite entries")
    if np.any(a < 0):
        i, j = np.argwhere(a < 0)[0]
        raise GraphFormatError(f"negative entry at ({i}, {j})")
    if np.any(np.abs(np.diag(a)) > tol):
        i = int(np.flatnonzero(np.abs(np.diag(a)) > tol)[0])
        raise GraphFormatError(f"nonzero diagonal entry at ({i}, {i})")
    diff = np.abs(a - a.T)
    if np.any(diff > tol):
        i, j = np.argwhere(diff > tol)[0]
        raise GraphFormatError(
            f"matrix not symmetric at ({i}, {j}): {a[i, j]} vs {a[j, i]}"
        )
    sym = (a + a.T) / 2.0
    iu, ju = np.triu_indices(n, k=1)
    vals = sym[iu, ju]
    keep = vals > 0
    if labels is not None and len(labels) != n:
        raise GraphFormatError(f"header has {len(labels)} labels for {n} columns")
    return Graph._from_arrays(n, iu[keep], ju[keep], vals[keep], labels=labels)


def to_edge_list(g: Graph, header: str | None = None) -> str:
    """Render `g` as an edge list that :func:`from_edge_list` reads back."""
    out = io.StringIO()
    if header:
        for line in header.splitlines():
            out.write(f"# {line}\n")
    out.write(f"# n={g.n}\n")
    for u, v, w in g.weighted_edges():
        out.write(f"{u} {v} {w!r}\n")
    return out.getvalue()


def to_dense_matrix(g: Graph, delimiter: str = ",") -> str:
    out = io.StringIO()
    writer = csv.writer(out, delimiter=delimiter, lineterminator="\n")
    if g.labels is not None:
        writer.writerow(g.labels)
    for row in g.weight_matrix:
        writer.writerow([repr(float(x)) for x in row])
    return out.getvalue()


def read_graph(path: str, fmt: str = "edgelist") -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "edgelist":
        return from_edge_list(text)
    if fmt == "matrix":
        return from_dense_matrix(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}")
