"""Built-in worked-example graphs.

Each fixture is a small graph whose club memberships, participation
numbers or median weights are known by hand, used by the golden tests and
exposed through ``cliquerich fixtures``.
"""

from __future__ import annotations

from typing import Callable

from .errors import CliqueRichError
from .graph import Graph

__all__ = ["FIXTURES", "get_fixture", "fixture_names"]


def _fig1_base_edges():
    # v0..v6 are indices 0..6; eight pendant leaves follow (three on v1,
    # three on v5, two on v3).
    edges = [(0, 1), (0, 5), (1, 2), (3, 4), (3, 2), (6, 3), (5, 4)]
    leaf = 7
    for hub, count in ((1, 3), (5, 3), (3, 2)):
        for _ in range(count):
            edges.append((hub, leaf))
            leaf += 1
    return edges


def _fig1_labels():
    return [f"v{i}" for i in range(7)] + [f"leaf{i}" for i in range(1, 9)]


def fig1_G() -> Graph:
    return Graph(15, _fig1_base_edges(), labels=_fig1_labels())


def fig1_Gprime() -> Graph:
    return Graph(15, _fig1_base_edges() + [(1, 5)], labels=_fig1_labels())


def fig1_Gdoubleprime() -> Graph:
    return Graph(15, _fig1_base_edges() + [(1, 5), (1, 3), (3, 5)], labels=_fig1_labels())


def fig2() -> Graph:
    # v1..v10 are indices 0..9; six unlabelled pendants hang off v1 and v6.
    v = {i: i - 1 for i in range(1, 11)}
    edges = [
        (v[1], v[2]), (v[1], v[3]), (v[1], v[6]),
        (v[6], v[4]), (v[6], v[5]),
        # K4 on v2, v4, v7, v8
        (v[2], v[7]), (v[2], v[8]), (v[2], v[4]), (v[7], v[8]), (v[4], v[8]), (v[7], v[4]),
        # K4 on v3, v5, v9, v10
        (v[3], v[9]), (v[3], v[5]), (v[3], v[10]), (v[9], v[5]), (v[5], v[10]), (v[9], v[10]),
        (v[1], 10), (v[1], 11), (v[1], 12),
        (v[6], 13), (v[6], 14), (v[6], 15),
    ]
    labels = [f"v{i}" for i in range(1, 11)] + [f"x{i}" for i in range(1, 7)]
    return Graph(16, edges, labels=labels)


def fig3() -> Graph:
    # u1..u5 are indices 0..4; seven unlabelled vertices a..g follow.
    u1, u2, u3, u4, u5, a, b, c, d, e, f, g = range(12)
    edges = [
        (a, u4), (u4, u1), (a, u1), (u1, u5), (u5, u3), (u1, u3),
        (u3, c), (u3, d), (u1, b), (u1, e), (u2, b), (u2, e),
        (f, g), (g, u2), (u2, f), (u4, u2), (u1, u2), (u5, c), (u5, d),
    ]
    labels = ["u1", "u2", "u3", "u4", "u5", "a", "b", "c", "d", "e", "f", "g"]
    return Graph(12, edges, labels=labels)


def _pentagon(edges, weights=None) -> Graph:
    return Graph(5, edges, weights, labels=[f"n{i}" for i in range(5)])


def fig5_exact() -> Graph:
    return _pentagon([(i, j) for i in range(5) for j in range(i + 1, 5)])


def fig5_pseudo_a() -> Graph:
    # K5 minus {n1,n4} and {n0,n4}
    return _pentagon([(0, 1), (0, 3), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)])


def fig5_pseudo_b() -> Graph:
    # K5 minus {n0,n4}, {n2,n3}, {n2,n4}, {n0,n3}
    return _pentagon([(0, 1), (0, 2), (1, 2), (1, 3), (1, 4), (3, 4)])


def fig6_top() -> Graph:
    a, b, c, d, e = range(5)
    edges = [(a, c), (a, d), (a, e), (b, c), (c, e), (d, e)]
    weights = [120, 1000, 300, 400, 200, 225]
    return Graph(5, edges, weights, labels=["a", "b", "c", "d", "e"])


def fig6_bottom() -> Graph:
    u, v, x, y, z = range(5)
    edges = [(u, v), (u, x), (u, y), (v, x), (v, y), (x, y), (x, z), (y, z)]
    weights = [5, 0.5, 100, 70, 6.99, 500, 111.22, 98]
    return Graph(5, edges, weights, labels=["u", "v", "x", "y", "z"])


FIXTURES: dict[str, Callable[[], Graph]] = {
    "fig1_G": fig1_G,
    "fig1_Gprime": fig1_Gprime,
    "fig1_Gdoubleprime": fig1_Gdoubleprime,
    "fig2": fig2,
    "fig3": fig3,
    "fig5_exact": fig5_exact,
    "fig5_pseudo_a": fig5_pseudo_a,
    "fig5_pseudo_b": fig5_pseudo_b,
    "fig6_top": fig6_top,
    "fig6_bottom": fig6_bottom,
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Graph:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise CliqueRichError(
            f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}"
        ) from None
