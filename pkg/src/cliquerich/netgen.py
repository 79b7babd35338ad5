"""Seeded Erdos-Renyi G(n, M) and Watts-Strogatz generators.

Randomness comes from numpy's PCG64 bit generator; batch items derive
their seeds from a root seed through :class:`numpy.random.SeedSequence`
so runs are reproducible whatever order the items execute in.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import GeneratorError
from .graph import Graph

__all__ = ["GenSpec", "gen_er", "gen_ws", "generate", "ring_degree", "derive_seed"]

DEFAULT_BETA = 0.1


def ring_degree(n: int, target_density: float) -> int:
    """Nearest even integer to ``target_density * (n - 1)``; ties go down."""
    x = target_density * (n - 1)
    lo = 2 * math.floor(x / 2)
    # tolerance so float noise on exact ties (e.g. 0.3 * 10) still rounds down
    return lo + 2 if x - lo > 1 + 1e-9 else lo


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    target_density: float
    seed: int
    rewiring_beta: float = DEFAULT_BETA

    def __post_init__(self):
        if self.family not in ("er", "ws"):
            raise GeneratorError(f"unknown family {self.family!r}")
        if not 0 < self.target_density <= 1:
            raise GeneratorError(f"density {self.target_density} outside (0, 1]")
        if not 0 <= self.rewiring_beta <= 1:
            raise GeneratorError(f"rewiring beta {self.rewiring_beta} outside [0, 1]")

    @property
    def k_ring(self) -> int:
        return ring_degree(self.n, self.target_density)

    def to_dict(self) -> dict:
        return asdict(self)


def derive_seed(root: int, *path: int) -> int:
    """64-bit seed for the item at `path` under `root`."""
    ss = np.random.SeedSequence(root, spawn_key=tuple(path))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def gen_er(spec: GenSpec) -> Graph:
    """Uniform graph with exactly ``round(density * C(n, 2))`` edges."""
    n = spec.n
    if n < 2:
        raise GeneratorError(f"ER needs n >= 2, got {n}")
    pairs = math.comb(n, 2)
    m = math.floor(spec.target_density * pairs + 0.5)
    picks = np.sort(_rng(spec.seed).choice(pairs, size=m, replace=False))
    iu, ju = np.triu_indices(n, k=1)
    return Graph._from_arrays(n, iu[picks], ju[picks], np.ones(m))


def gen_ws(spec: GenSpec) -> Graph:
    """Ring lattice of even degree ``k_ring`` with each edge rewired with
    probability ``rewiring_beta``.

    Rewiring follows the classic scheme: for each lattice offset and each
    vertex, the far endpoint of the edge is replaced by a uniformly chosen
    vertex that is neither the vertex itself nor already adjacent. The
    edge count ``n * k_ring / 2`` is preserved.
    """
    n, kr = spec.n, spec.k_ring
    if n < 4:
        raise GeneratorError(f"WS needs n >= 4, got {n}")
    if not 2 <= kr < n:
        raise GeneratorError(
            f"ring degree {kr} from density {spec.target_density} invalid for n={n}"
        )
    adj = np.zeros((n, n), dtype=bool)
    for off in range(1, kr // 2 + 1):
        idx = np.arange(n)
        adj[idx, (idx + off) % n] = True
        adj[(idx + off) % n, idx] = True
    rng = _rng(spec.seed)
    beta = spec.rewiring_beta
    for off in range(1, kr // 2 + 1):
        for u in range(n):
            v = (u + off) % n
            if rng.random() >= beta or not adj[u, v]:
                continue
            free = np.flatnonzero(~adj[u])
            free = free[free != u]
            if free.size == 0:
                continue
            w = int(free[rng.integers(free.size)])
            adj[u, v] = adj[v, u] = False
            adj[u, w] = adj[w, u] = True
    iu, ju = np.nonzero(np.triu(adj, k=1))
    return Graph._from_arrays(n, iu, ju, np.ones(iu.size))


def generate(spec: GenSpec) -> Graph:
    return gen_er(spec) if spec.family == "er" else gen_ws(spec)
