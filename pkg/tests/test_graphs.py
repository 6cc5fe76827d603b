import random

import pytest

from zdsemigroups.errors import UsageError
from zdsemigroups.graphs import (
    CompleteK,
    CompletePlusEnd,
    SimpleGraph,
    build_zd_graph,
    graph_to_dot,
    recognize_target,
    target_to_graph,
)
from zdsemigroups.tables import MulTable, permute_table


def graph_of(edges, n):
    return SimpleGraph(n, frozenset(edges))


def test_target_invariants():
    with pytest.raises(UsageError):
        CompleteK(0)
    with pytest.raises(UsageError):
        CompletePlusEnd(1)
    assert CompleteK(1).element_count == 1
    assert CompletePlusEnd(3).element_count == 4


def test_build_zd_graph_triangle():
    t = MulTable.from_rows(
        [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
    )
    g = build_zd_graph(t)
    assert g.vertex_count == 3
    assert g.edges == frozenset([(1, 2), (1, 3), (2, 3)])


def test_build_zd_graph_single_nilpotent():
    t = MulTable.from_rows([[0, 0], [0, 0]])
    g = build_zd_graph(t)
    assert g.vertex_count == 1 and not g.edges


def test_build_zd_graph_pendant():
    # triangle plus pendant attached to element 1 (x = element 4)
    grid = [[0] * 5 for _ in range(5)]
    for u in range(1, 4):
        for v in range(u + 1, 4):
            grid[u][v] = grid[v][u] = 0
    grid[2][4] = grid[4][2] = 1
    grid[3][4] = grid[4][3] = 1
    t = MulTable.from_rows(grid)
    g = build_zd_graph(t)
    assert g.edges == frozenset([(1, 2), (1, 3), (1, 4), (2, 3)])
    rec = recognize_target(g)
    assert rec.target == CompletePlusEnd(3)
    assert rec.pendant == 4 and rec.neighbor == 1


def test_graph_label_equivariance():
    rng = random.Random(11)
    grid = [[0] * 5 for _ in range(5)]
    grid[2][4] = grid[4][2] = 1
    grid[3][4] = grid[4][3] = 1
    t = MulTable.from_rows(grid)
    for _ in range(20):
        perm = [0] + rng.sample(range(1, 5), 4)
        pg = build_zd_graph(permute_table(t, perm))
        expected = frozenset(
            tuple(sorted((perm[u], perm[v]))) for u, v in build_zd_graph(t).edges
        )
        assert pg.edges == expected


def test_recognize_complete():
    assert recognize_target(graph_of([(1, 2), (1, 3), (2, 3)], 3)).target == CompleteK(3)
    assert recognize_target(graph_of([], 1)).target == CompleteK(1)
    assert recognize_target(graph_of([(1, 2)], 2)).target == CompleteK(2)


def test_recognize_pendant():
    rec = recognize_target(graph_of([(1, 2), (1, 3), (2, 3), (2, 4)], 4))
    assert rec.target == CompletePlusEnd(3)
    assert rec.pendant == 4 and rec.neighbor == 2


def test_recognize_path3_boundary():
    # P3 is the 2-clique with a pendant; the smallest degree-1 vertex wins.
    rec = recognize_target(graph_of([(1, 2), (2, 3)], 3))
    assert rec.target == CompletePlusEnd(2)
    assert rec.pendant == 1 and rec.neighbor == 2


def test_recognize_rejects_other_graphs():
    # 4-path and 4-cycle are neither family
    assert recognize_target(graph_of([(1, 2), (2, 3), (3, 4)], 4)) is None
    assert recognize_target(graph_of([(1, 2), (2, 3), (3, 4), (1, 4)], 4)) is None
    # complete graph missing one edge
    assert recognize_target(graph_of([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4)], 4)) is None


def test_target_to_graph_round_trip():
    for target in (CompleteK(1), CompleteK(4), CompletePlusEnd(3), CompletePlusEnd(5)):
        rec = recognize_target(target_to_graph(target))
        assert rec is not None and rec.target == target


def test_dot_export_stable_and_labelled():
    g = target_to_graph(CompletePlusEnd(3))
    out = graph_to_dot(g, pendant=4)
    assert out == graph_to_dot(g, pendant=4)  # bit-exact
    assert "x1;" in out and "a1 -- x1;" in out
    lines = out.splitlines()
    assert lines[0] == "graph zero_divisor_graph {" and lines[-1] == "}"


def test_dot_vertex_order():
    out = graph_to_dot(target_to_graph(CompleteK(3)))
    body = [l.strip() for l in out.splitlines()[1:-1]]
    assert body[:3] == ["a1;", "a2;", "a3;"]
    assert body[3:] == ["a1 -- a2;", "a1 -- a3;", "a2 -- a3;"]
