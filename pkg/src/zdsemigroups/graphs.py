"""Zero-divisor graphs and recognition of the two target families.

The graph of a table has the nonzero elements as vertices and an edge
between distinct u, v exactly when uv = 0.  Loops (u*u = 0) are not
edges; they only make u a zero divisor.

Two graph families are recognized: the complete graph on n vertices,
and a complete graph on n vertices with one extra pendant (degree-1)
vertex attached to a single clique vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Union

from .errors import UsageError
from .tables import MulTable


@dataclass(frozen=True)
class SimpleGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for u, v in self.edges:
            if not (1 <= u < v <= self.vertex_count):
                raise UsageError(f"edge ({u}, {v}) outside 1..{self.vertex_count} or not ordered")

    def degree(self, u: int) -> int:
        return sum(1 for e in self.edges if u in e)


@dataclass(frozen=True)
class CompleteK:
    """Complete graph on n >= 1 vertices."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise UsageError("complete graph needs n >= 1")

    @property
    def element_count(self) -> int:
        return self.n


@dataclass(frozen=True)
class CompletePlusEnd:
    """Complete graph on n >= 2 vertices plus one pendant vertex.

    The pendant is attached to exactly one clique vertex; in tables the
    pendant is element n+1 and its neighbor is element 1.
    """

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise UsageError("a pendant needs a clique of size >= 2")

    @property
    def element_count(self) -> int:
        return self.n + 1


TargetGraph = Union[CompleteK, CompletePlusEnd]


class Recognition(NamedTuple):
    target: TargetGraph
    pendant: Optional[int]
    neighbor: Optional[int]


def build_zd_graph(table: MulTable) -> SimpleGraph:
    """Graph on {1..m} with an edge {u, v} whenever u != v and uv = 0."""
    ent = table.entries
    m = table.m
    edges = frozenset(
        (u, v)
        for u in range(1, m + 1)
        for v in range(u + 1, m + 1)
        if ent[u][v] == 0
    )
    return SimpleGraph(m, edges)


def recognize_target(graph: SimpleGraph) -> Optional[Recognition]:
    """Recognize a complete graph or a complete graph with one pendant.

    Completeness is checked first, so the two-vertex path reads as the
    complete graph on 2 vertices.  The three-vertex path is recognized
    as a 2-clique plus pendant; with two degree-1 candidates the
    smallest vertex id is reported as the pendant.
    """
    nv = graph.vertex_count
    edges = graph.edges
    if len(edges) == nv * (nv - 1) // 2:
        return Recognition(CompleteK(nv), None, None)
    if nv < 3:
        return None
    adj: dict[int, set[int]] = {u: set() for u in range(1, nv + 1)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    clique_size = nv - 1
    for p in range(1, nv + 1):
        if len(adj[p]) != 1:
            continue
        rest = [u for u in range(1, nv + 1) if u != p]
        if all(len(adj[u] - {p}) == clique_size - 1 for u in rest):
            neighbor = next(iter(adj[p]))
            return Recognition(CompletePlusEnd(clique_size), p, neighbor)
    return None


def target_to_graph(target: TargetGraph) -> SimpleGraph:
    """Build the labelled graph a conforming table realizes."""
    if isinstance(target, CompleteK):
        n = target.n
        return SimpleGraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))
    n = target.n
    clique = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    return SimpleGraph(n + 1, frozenset(clique + [(1, n + 1)]))


def graph_to_dot(graph: SimpleGraph, pendant: Optional[int] = None,
                 annotations: tuple[str, ...] = ()) -> str:
    """Render one ``graph`` block, vertices in id order, stable across runs.

    Vertices are labelled a1..an except the pendant (if given), which is
    labelled x1.
    """

    def name(u: int) -> str:
        return "x1" if u == pendant else f"a{u}"

    lines = ["graph zero_divisor_graph {"]
    for note in annotations:
        lines.append(f"  // {note}")
    for u in range(1, graph.vertex_count + 1):
        lines.append(f"  {name(u)};")
    for u, v in sorted(graph.edges):
        lines.append(f"  {name(u)} -- {name(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
