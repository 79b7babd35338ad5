import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquerich.census import brute_force_census
from cliquerich.errors import PipelineError
from cliquerich.fixtures import fig5_exact, fig6_top
from cliquerich.graph import Graph
from cliquerich.pipeline import (
    DEFAULT_SCHEDULE,
    PercentileSchedule,
    PipelineTrace,
    percentile_value,
    run_iteration,
    run_pipeline,
)

from .helpers import complete_graph, random_graph, two_k6_with_chaff

REFERENCE = [50, 50, 75, 87.5, 93.75, 96.875, 98.4375, 99.21875, 99.609375, 99.8046875]


def oracle_pipeline(g, k, schedule):
    """Straight re-statement of the loop on top of the unpruned census."""
    edges = {(u, v): w for u, v, w in g.weighted_edges()}
    totals = []
    for i, p in enumerate(schedule):
        ws = sorted(edges.values())
        rank = math.ceil(Fraction(p) * len(ws) / 100)
        w = ws[rank - 1]
        cur = Graph(g.n, list(edges), list(edges.values()))
        t = brute_force_census(cur, k, "pseudo", w)
        totals.append(t.total)
        edges = {e: float(c) for e, c in t.edge_counts.items() if c > 0}
        if not edges:
            break
        if i >= 1 and totals[-1] == totals[-2]:
            break
    support = sorted({v for e in edges for v in e})
    return totals, support


class TestSchedule:
    def test_default_matches_reference(self):
        assert list(DEFAULT_SCHEDULE.entries) == REFERENCE
        assert DEFAULT_SCHEDULE.entries[-1] == 99.8046875

    def test_recurrence(self):
        e = PercentileSchedule.default(16).entries
        for a, b in zip(e[2:], e[3:]):
            assert 100 - b == (100 - a) / 2

    @pytest.mark.parametrize("text", ["[50, 75]", "50 75", "50,75\n"])
    def test_from_text(self, text):
        assert PercentileSchedule.from_text(text).entries == (50.0, 75.0)

    @pytest.mark.parametrize("text", ["[]", "[0]", "[101]", "abc", '{"a": 1}'])
    def test_bad_schedules(self, text):
        with pytest.raises(PipelineError):
            PercentileSchedule.from_text(text)


class TestPercentile:
    @pytest.mark.parametrize(
        "values, p, expected",
        [
            ([10, 20, 30, 40], 75, 30),
            ([10, 20, 30, 40], 50, 20),
            ([10, 20, 30, 40], 100, 40),
            ([10, 20, 30, 40], 1, 10),
            ([7], 50, 7),
            ([120, 200, 225, 300, 400, 1000], 50, 225),
        ],
    )
    def test_examples(self, values, p, expected):
        assert percentile_value(values, p) == expected

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 100), min_size=1, max_size=50),
           st.sampled_from(REFERENCE + [1, 33.3, 100]))
    def test_nearest_rank_definition(self, values, p):
        v = percentile_value(values, p)
        m = len(values)
        # at least ceil(p m / 100) values are <= v and fewer are < v
        need = math.ceil(Fraction(p) * m / 100)
        assert sum(x <= v for x in values) >= need
        assert sum(x < v for x in values) < need

    def test_empty(self):
        with pytest.raises(PipelineError):
            percentile_value([], 50)


class TestIteration:
    def test_k6(self):
        g, rec = run_iteration(complete_graph(6), 5, 50)
        assert rec.threshold == 1.0
        assert rec.total == 6
        assert set(g.edge_weights.tolist()) == {4.0}
        assert g.num_edges == 15

    def test_fig6_top(self):
        g, rec = run_iteration(fig6_top(), 5, 50)
        assert rec.threshold == 225.0
        assert rec.total == 0
        assert g.num_edges == 0

    def test_edgeless_input(self):
        with pytest.raises(PipelineError):
            run_iteration(Graph(4), 3, 50)

    def test_hard_cut_drops_light_edges(self, rng):
        g = random_graph(rng, 14, 0.6, weighted=True)
        soft, _ = run_iteration(g, 3, 50)
        hard, _ = run_iteration(g, 3, 50, hard_cut=True)
        assert set(hard.edges()) <= set(soft.edges())
        if soft.num_edges:
            cut = percentile_value(soft.edge_weights, 50)
            assert hard.edge_weights.min() >= cut


class TestPipeline:
    def test_k5_converges(self):
        tr = run_pipeline(fig5_exact(), 5)
        assert tr.halt_reason == "converged"
        assert [r.total for r in tr.records] == [1, 1]
        assert tr.supernodes == (0, 1, 2, 3, 4)

    def test_path_goes_empty(self):
        g = Graph(6, [(i, i + 1) for i in range(5)])
        tr = run_pipeline(g, 3)
        assert tr.halt_reason == "edgeless"
        assert tr.supernodes == ()

    def test_two_k6(self):
        tr = run_pipeline(two_k6_with_chaff(), 5)
        assert tr.supernodes == tuple(range(12))

    def test_schedule_exhausted(self):
        tr = run_pipeline(complete_graph(6), 3, PercentileSchedule((50.0,)))
        assert tr.halt_reason == "schedule-exhausted"
        assert len(tr.records) == 1

    def test_record_indices(self):
        tr = run_pipeline(fig5_exact(), 5)
        assert [(r.iteration, r.graph_index) for r in tr.records] == [(0, 1), (1, 2)]

    def test_bad_inputs(self):
        with pytest.raises(PipelineError):
            run_pipeline(Graph(5), 3)
        with pytest.raises(PipelineError):
            run_pipeline(complete_graph(5), 1)

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_oracle(self, seed):
        rng = np.random.default_rng(500 + seed)
        g = random_graph(rng, int(rng.integers(6, 11)), rng.uniform(0.3, 0.9), weighted=True)
        if g.num_edges == 0:
            return
        k = int(rng.integers(3, 5))
        tr = run_pipeline(g, k)
        totals, support = oracle_pipeline(g, k, REFERENCE)
        assert [r.total for r in tr.records] == totals
        assert list(tr.supernodes) == support

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10_000), st.integers(6, 25), st.integers(3, 5))
    def test_nested_edges(self, seed, n, k):
        g = random_graph(np.random.default_rng(seed), n, 0.5, weighted=True)
        if g.num_edges == 0:
            return
        tr = run_pipeline(g, k, keep_graphs=True)
        sets = [set(h.edges()) for h in tr.graphs]
        assert all(b <= a for a, b in zip(sets, sets[1:]))
        assert len(tr.records) <= 10
        assert set(tr.supernodes) == set(tr.graphs[-1].non_isolated())

    def test_worker_invariance(self, rng):
        g = random_graph(rng, 25, 0.5, weighted=True)
        assert run_pipeline(g, 4, workers=3) == run_pipeline(g, 4)

    def test_trace_roundtrip(self, rng):
        g = random_graph(rng, 15, 0.6, weighted=True)
        tr = run_pipeline(g, 3)
        assert PipelineTrace.from_dict(tr.to_dict()) == tr

    def test_trace_replay(self, rng):
        g = random_graph(rng, 15, 0.6, weighted=True)
        tr = run_pipeline(g, 3)
        h = g
        for rec in tr.records:
            h, again = run_iteration(h, 3, rec.percentile, iteration=rec.iteration)
            assert again == rec
        assert tuple(h.non_isolated()) == tr.supernodes

    def test_labels_carried(self):
        tr = run_pipeline(fig6_top(), 3)
        assert tr.labels == ("a", "b", "c", "d", "e")
        assert tr.supernode_labels() == [tr.labels[v] for v in tr.supernodes]
