"""Brute-force enumeration of labelled tables realizing a target graph.

The search space is seeded from the graph alone: edges force products to
zero, non-edges forbid them, and everything else is free.  A depth-first
scan assigns the free cells in a fixed order, pruning a branch as soon
as some fully determined triple breaks the associative law.  Completed
tables are re-validated from scratch (associativity, zero-divisor
membership, exact graph), so the pruning is an optimization only and
nothing is trusted by construction.

For a commutative table the associative law for every ordered triple is
equivalent to, for each multiset {u, v, w}, the three products
(uv)w, (vw)u, (uw)v agreeing; the pruner compares whichever of the
three are already determined.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from math import prod
from typing import Callable, Iterator, Optional

from .errors import BudgetError, UsageError
from .graphs import CompleteK, TargetGraph, build_zd_graph, recognize_target
from .tables import MulTable, is_zd_semigroup

# Leaf-count ceiling for runs without the long-run flag.  The pendant
# target at n=4 (~10^6 assignments) must fit; n=5 (~1.5*10^8) must not.
DESK_SCALE_LIMIT = 5_000_000

UNSET = -1


@dataclass(frozen=True)
class SearchSpec:
    """Free cells, their value domains, and the forced partial table."""

    target: TargetGraph
    slots: tuple[tuple[int, int], ...]
    domains: tuple[tuple[int, ...], ...]
    template: tuple[tuple[int, ...], ...]


def seed_partial_table(target: TargetGraph) -> SearchSpec:
    """Forced constraints and free slots for a target graph.

    Complete graph on n vertices: all off-diagonal products are forced
    to 0, the n diagonal cells are free over all m+1 values.

    Complete graph plus pendant: additionally the pendant (element m)
    kills only element 1, so cell (1, m) is forced 0 and the cells
    (i, m) for i >= 2 are free over the *nonzero* values (a zero there
    would add an edge).  Slot order is pendant square first, then the
    pendant products ascending, then the diagonal ascending.
    """
    m = target.element_count
    grid = [[UNSET] * (m + 1) for _ in range(m + 1)]
    for u in range(m + 1):
        grid[0][u] = grid[u][0] = 0
    n = target.n
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            grid[u][v] = grid[v][u] = 0
    full_domain = tuple(range(m + 1))
    if isinstance(target, CompleteK):
        slots = tuple((i, i) for i in range(1, n + 1))
        domains = tuple(full_domain for _ in slots)
    else:
        grid[1][m] = grid[m][1] = 0
        slots = (
            (m, m),
            *((i, m) for i in range(2, n + 1)),
            *((i, i) for i in range(1, n + 1)),
        )
        nonzero = tuple(range(1, m + 1))
        domains = (
            full_domain,
            *(nonzero for _ in range(2, n + 1)),
            *(full_domain for _ in range(1, n + 1)),
        )
    return SearchSpec(target, slots, domains, tuple(tuple(row) for row in grid))


def assignment_count(spec: SearchSpec) -> int:
    """Number of leaf assignments the prune-free search would visit."""
    return prod(len(d) for d in spec.domains)


def iter_candidate_tables(spec: SearchSpec) -> Iterator[MulTable]:
    """Every completion of the template, with no validity filtering."""
    import itertools

    grid = [list(row) for row in spec.template]
    for values in itertools.product(*spec.domains):
        for (u, v), val in zip(spec.slots, values):
            grid[u][v] = grid[v][u] = val
        yield MulTable.from_rows(grid)


def _triple_multisets(m: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (u, v, w)
        for u in range(1, m + 1)
        for v in range(u, m + 1)
        for w in range(v, m + 1)
    )


def _partial_violation(g: list[list[int]], triples) -> bool:
    """Do two determined parenthesizations of some multiset disagree?"""
    for u, v, w in triples:
        p = g[u][v]
        a = g[p][w] if p >= 0 else UNSET
        q = g[v][w]
        b = g[q][u] if q >= 0 else UNSET
        r = g[u][w]
        c = g[r][v] if r >= 0 else UNSET
        if a >= 0:
            if (b >= 0 and a != b) or (c >= 0 and a != c):
                return True
        elif b >= 0 and c >= 0 and b != c:
            return True
    return False


def enumerate_labeled(
    target: TargetGraph,
    visitor: Optional[Callable[[MulTable], None]] = None,
    *,
    prune: bool = True,
    allow_long_run: bool = False,
    root_values: Optional[tuple[int, ...]] = None,
) -> int:
    """Depth-first enumeration of every labelled table realizing ``target``.

    ``visitor`` receives each accepted table in deterministic slot order.
    ``root_values`` restricts the first slot (used to split work across
    processes).  Returns the number of accepted tables.
    """
    spec = seed_partial_table(target)
    domains = list(spec.domains)
    if root_values is not None:
        bad = set(root_values) - set(domains[0])
        if bad:
            raise UsageError(f"root values {sorted(bad)} outside the first slot's domain")
        domains[0] = tuple(root_values)
    total = prod(len(d) for d in domains)
    if total > DESK_SCALE_LIMIT and not allow_long_run:
        raise BudgetError(
            f"{total} assignments for {target} exceeds the desk-scale limit "
            f"({DESK_SCALE_LIMIT}); rerun with the long-run flag to proceed"
        )
    m = target.element_count
    grid = [list(row) for row in spec.template]
    triples = _triple_multisets(m)
    slots = spec.slots
    depth_max = len(slots)
    accepted = 0

    def descend(depth: int) -> None:
        nonlocal accepted
        if depth == depth_max:
            table = MulTable.from_rows(grid)
            if is_zd_semigroup(table):
                rec = recognize_target(build_zd_graph(table))
                if rec is not None and rec.target == target:
                    accepted += 1
                    if visitor is not None:
                        visitor(table)
            return
        u, v = slots[depth]
        row_u = grid[u]
        row_v = grid[v]
        for val in domains[depth]:
            row_u[v] = val
            row_v[u] = val
            if not prune or not _partial_violation(grid, triples):
                descend(depth + 1)
        row_u[v] = UNSET
        row_v[u] = UNSET

    descend(0)
    return accepted


def dump_labeled_tables(target: TargetGraph, path, **kwargs) -> int:
    """Write accepted labelled tables as newline-delimited JSON."""
    import json

    from .tables import table_to_json

    with open(path, "w") as fh:
        def write(table: MulTable) -> None:
            fh.write(json.dumps(table_to_json(table), sort_keys=True) + "\n")

        return enumerate_labeled(target, write, **kwargs)


def _root_worker(args) -> list[tuple[tuple[int, ...], ...]]:
    target, root, allow_long_run = args
    out: list[tuple[tuple[int, ...], ...]] = []
    enumerate_labeled(
        target,
        lambda t: out.append(t.entries),
        allow_long_run=allow_long_run,
        root_values=(root,),
    )
    return out


def oracle_classes(target: TargetGraph, *, jobs: int = 1, allow_long_run: bool = False):
    """Enumerate labelled tables and classify them up to isomorphism.

    With ``jobs > 1`` the first-slot branches run in separate processes;
    the accepted streams are merged in slot order, so the catalog is
    identical to a serial run.
    """
    from .classify import ClassCatalog

    spec = seed_partial_table(target)
    if assignment_count(spec) > DESK_SCALE_LIMIT and not allow_long_run:
        raise BudgetError(
            f"{assignment_count(spec)} assignments for {target} exceeds the desk-scale "
            f"limit ({DESK_SCALE_LIMIT}); rerun with the long-run flag to proceed"
        )
    catalog = ClassCatalog()
    if jobs <= 1:
        enumerate_labeled(target, catalog.insert, allow_long_run=allow_long_run)
        return catalog
    roots = spec.domains[0]
    work = [(target, root, True) for root in roots]
    with multiprocessing.Pool(processes=min(jobs, len(work))) as pool:
        per_root = pool.map(_root_worker, work)
    for entries_list in per_root:
        for entries in entries_list:
            catalog.insert(MulTable(entries))
    return catalog
