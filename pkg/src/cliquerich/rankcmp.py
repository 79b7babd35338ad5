"""Compare degree-based and participation-based vertex rankings."""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .census import exact_census
from .clubs import select_threshold_for_size
from .errors import RankError
from .netgen import GenSpec, generate

__all__ = [
    "rank_vertices",
    "swap_distance",
    "count_inversions",
    "position_mismatches",
    "Overlap",
    "overlap_report",
    "RankComparison",
    "compare_rankings",
    "SampleResult",
    "CellSummary",
    "run_sample",
    "batch_experiment",
]


def rank_vertices(scores: Sequence[int]) -> list[int]:
    """Vertices by descending score, ties by ascending index."""
    s = np.asarray(scores)
    return np.lexsort((np.arange(s.size), -s)).tolist()


def count_inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``i < j`` with ``seq[i] > seq[j]`` (merge sort)."""
    a = list(seq)
    buf = [0] * len(a)
    inv = 0
    width = 1
    n = len(a)
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, out = lo, mid, lo
            while i < mid and j < hi:
                if a[i] <= a[j]:
                    buf[out] = a[i]
                    i += 1
                else:
                    buf[out] = a[j]
                    inv += mid - i
                    j += 1
                out += 1
            buf[out:out + mid - i] = a[i:mid]
            out += mid - i
            buf[out:out + hi - j] = a[j:hi]
            a[lo:hi] = buf[lo:hi]
        width *= 2
    return inv


def swap_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Kendall tau distance: adjacent transpositions turning `a` into `b`."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        raise RankError(f"rankings differ in length ({len(a)} vs {len(b)})")
    if sorted(a) != sorted(b) or len(set(a)) != len(a):
        raise RankError("rankings must be permutations of the same items")
    pos = {x: i for i, x in enumerate(b)}
    return count_inversions([pos[x] for x in a])


def position_mismatches(a: Sequence[int], b: Sequence[int]) -> int:
    """Number of rank positions holding different vertices."""
    if len(a) != len(b):
        raise RankError(f"rankings differ in length ({len(a)} vs {len(b)})")
    return sum(x != y for x, y in zip(a, b))


def _ratio(num: int, den: int) -> float | None:
    return num / den if den else None


@dataclass
class Overlap:
    both_of_a: float | None
    both_of_b: float | None
    only_a: float | None
    only_b: float | None

    def as_tuple(self):
        return (self.both_of_a, self.both_of_b, self.only_a, self.only_b)


def overlap_report(set_a: Iterable[int], set_b: Iterable[int]) -> Overlap:
    """Shares of each set that are / are not in the other one."""
    a, b = set(set_a), set(set_b)
    both = len(a & b)
    return Overlap(
        both_of_a=_ratio(both, len(a)),
        both_of_b=_ratio(both, len(b)),
        only_a=_ratio(len(a - b), len(a)),
        only_b=_ratio(len(b - a), len(b)),
    )


@dataclass
class RankComparison:
    ranking_a: list[int]
    ranking_b: list[int]
    swap_distance: int
    set_a: list[int]
    set_b: list[int]
    overlap: Overlap
    threshold_a: int | None = None
    threshold_b: int | None = None

    def to_dict(self) -> dict:
        o = self.overlap
        return {
            "ranking_a": self.ranking_a,
            "ranking_b": self.ranking_b,
            "swap_distance": self.swap_distance,
            "set_a": self.set_a,
            "set_b": self.set_b,
            "threshold_a": self.threshold_a,
            "threshold_b": self.threshold_b,
            "prop_both_of_a": o.both_of_a,
            "prop_both_of_b": o.both_of_b,
            "prop_only_a": o.only_a,
            "prop_only_b": o.only_b,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RankComparison":
        return cls(
            ranking_a=list(d["ranking_a"]),
            ranking_b=list(d["ranking_b"]),
            swap_distance=int(d["swap_distance"]),
            set_a=list(d["set_a"]),
            set_b=list(d["set_b"]),
            overlap=Overlap(
                d["prop_both_of_a"], d["prop_both_of_b"], d["prop_only_a"], d["prop_only_b"]
            ),
            threshold_a=d.get("threshold_a"),
            threshold_b=d.get("threshold_b"),
        )


def compare_rankings(
    degree_scores: Sequence[int], participation_scores: Sequence[int], club_size: int
) -> RankComparison:
    """Rich club R (by degree) against Super rich club S (by participation).

    R's threshold is chosen so that ``|R|`` is as close to `club_size` as
    ties allow; S's threshold is then chosen to bring ``|S|`` as close as
    possible to ``|R|``.
    """
    deg = np.asarray(degree_scores, dtype=np.int64)
    part = np.asarray(participation_scores, dtype=np.int64)
    j = select_threshold_for_size(deg, club_size)
    r = np.flatnonzero(deg > j).tolist()
    jp = select_threshold_for_size(part, len(r))
    s = np.flatnonzero(part > jp).tolist()
    ra, rb = rank_vertices(deg), rank_vertices(part)
    return RankComparison(
        ranking_a=ra,
        ranking_b=rb,
        swap_distance=swap_distance(ra, rb),
        set_a=r,
        set_b=s,
        overlap=overlap_report(r, s),
        threshold_a=j,
        threshold_b=jp,
    )


@dataclass
class SampleResult:
    spec: GenSpec
    comparison: RankComparison

    def to_row(self) -> dict:
        o = self.comparison.overlap
        return {
            "family": self.spec.family,
            "n": self.spec.n,
            "density": self.spec.target_density,
            "beta": self.spec.rewiring_beta,
            "seed": self.spec.seed,
            "swap_distance": self.comparison.swap_distance,
            "position_mismatches": position_mismatches(
                self.comparison.ranking_a, self.comparison.ranking_b
            ),
            "size_r": len(self.comparison.set_a),
            "size_s": len(self.comparison.set_b),
            "prop_s_in_r": o.both_of_b,
            "prop_r_in_s": o.both_of_a,
        }


@dataclass
class CellSummary:
    family: str
    n: int
    density: float
    samples: list[SampleResult] = field(repr=False)
    mu: float = 0.0
    sigma: float = 0.0
    mean_prop_r_in_s: float | None = None
    mean_prop_s_in_r: float | None = None
    mean_mismatches: float = 0.0

    @property
    def count(self) -> int:
        return len(self.samples)

    def to_row(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "density": self.density,
            "N": self.count,
            "mu": self.mu,
            "sigma": self.sigma,
            "mean_position_mismatches": self.mean_mismatches,
            "mean_prop_r_in_s": self.mean_prop_r_in_s,
            "mean_prop_s_in_r": self.mean_prop_s_in_r,
        }


def run_sample(spec: GenSpec, k: int, club_fraction: float = 0.25, workers: int = 1) -> SampleResult:
    g = generate(spec)
    table = exact_census(g, k, workers=workers)
    size = round(club_fraction * g.n)
    return SampleResult(spec, compare_rankings(g.degrees(), table.vertex_counts, size))


def _mean(xs):
    xs = [x for x in xs if x is not None]
    return statistics.fmean(xs) if xs else None


def summarize(family, n, density, samples: list[SampleResult]) -> CellSummary:
    if len(samples) < 2:
        raise RankError(f"need at least 2 samples per cell for a deviation, got {len(samples)}")
    d = [s.comparison.swap_distance for s in samples]
    return CellSummary(
        family=family,
        n=n,
        density=density,
        samples=samples,
        mu=statistics.fmean(d),
        sigma=statistics.stdev(d),
        mean_prop_r_in_s=_mean(s.comparison.overlap.both_of_a for s in samples),
        mean_prop_s_in_r=_mean(s.comparison.overlap.both_of_b for s in samples),
        mean_mismatches=statistics.fmean(
            position_mismatches(s.comparison.ranking_a, s.comparison.ranking_b) for s in samples
        ),
    )


def batch_experiment(
    specs: Sequence[GenSpec], k: int, club_fraction: float = 0.25, workers: int = 1
) -> list[CellSummary]:
    """Mean and sample standard deviation of the degree-vs-participation
    swap distance for every (family, n, density) cell in `specs`.

    Cells keep the order in which they first appear in `specs`.
    """
    cells: dict[tuple, list[GenSpec]] = {}
    for s in specs:
        cells.setdefault((s.family, s.n, s.target_density), []).append(s)
    out = []
    for (family, n, dens), members in cells.items():
        if len(members) < 2:
            raise RankError(f"cell n={n} density={dens} has {len(members)} sample(s); need >= 2")
        samples = [run_sample(s, k, club_fraction, workers) for s in members]
        out.append(summarize(family, n, dens, samples))
    return out
