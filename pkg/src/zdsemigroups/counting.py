"""Closed counting formulas and condition-based generators.

For the complete graph on n vertices, a table with all off-diagonal
products zero is an admissible semigroup exactly when every diagonal
entry is 0, the element itself, or a *different* element that squares
to 0.  Classes correspond to a choice of k nilpotents, t idempotents,
and a partition of n - t into exactly k parts (each nilpotent grouped
with the pointers into it), giving the class count

    sum_{k=1..n} sum_{t=0..n-k} p(n - t, k)  +  1

where p(j, i) counts partitions of j into exactly i parts and the +1 is
the all-idempotent table.

For the complete graph with one pendant vertex x (attached to element 1,
so x kills only element 1), the structure splits into four cases by the
value of x*x, which is an isomorphism invariant:

    "zero"    x*x = 0      exactly n classes
    "self"    x*x = x      no closed formula; enumerated from conditions
    "attach"  x*x = 1      exactly n classes (see below)
    "other"   x*x = j>=2   exactly 3n - 4 classes

In the attach case the only constraints forced by associativity are
i*x = 1 and i*i in {0, 1} for every clique element i: squaring to the
neighbor is admissible, exactly as in the zero case.  The brute-force
search confirms this family, so the attach case contributes n classes
even though it was originally tabulated as a single class; the old
value is kept in ``TABULATED_COUNTS`` and reported as a discrepancy.

The "self" case is stratified by r, the number of clique elements i >= 2
with i*x = i (the elements fixed by the pendant).  Previously tabulated
values for small cases are kept in ``TABULATED_COUNTS`` purely as
cross-checks: where a computed count disagrees, the computation wins and
the deviation is surfaced as a discrepancy finding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Iterator

from .classify import ClassCatalog, canonical_form, pendant_pinned_key
from .errors import UsageError
from .graphs import CompletePlusEnd, build_zd_graph, recognize_target
from .tables import MulTable, check_associativity

# Class counts reported in earlier tabulations of these families, kept
# only for cross-checking: where a computed count disagrees, the
# computation wins and the deviation is surfaced, never suppressed.
# Keys: clique size n.  "pendant_attach" records the claim that the
# x*x = 1 case has a single class; the enumerations here refute it
# (the family admits squares equal to the neighbor, giving n classes).
TABULATED_COUNTS = {
    "clique": {3: 7, 4: 12},
    "pendant_self": {3: 6, 4: 27, 5: 59},
    "pendant_total": {3: 15, 4: 40, 5: 76},
    "pendant_attach": 1,
}


# ---------------------------------------------------------------------------
# partitions


@cache
def count_partitions_exact(total: int, parts: int) -> int:
    """Number of partitions of ``total`` into exactly ``parts`` positive parts.

    Recurrence: p(j, i) = p(j-1, i-1) + p(j-i, i), with p(0, 0) = 1.
    """
    if total == 0 and parts == 0:
        return 1
    if total <= 0 or parts <= 0 or parts > total:
        return 0
    return count_partitions_exact(total - 1, parts - 1) + count_partitions_exact(
        total - parts, parts
    )


def iter_partitions_exact(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weakly increasing tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return

    def rec(remaining: int, k: int, minimum: int) -> Iterator[tuple[int, ...]]:
        if k == 1:
            if remaining >= minimum:
                yield (remaining,)
            return
        for first in range(minimum, remaining // k + 1):
            for rest in rec(remaining - first, k - 1, first):
                yield (first, *rest)

    yield from rec(total, parts, 1)


# ---------------------------------------------------------------------------
# complete graph


def clique_class_count(n: int) -> int:
    """Closed class count for the complete graph on n vertices."""
    if n < 1:
        raise UsageError("clique size must be >= 1")
    return (
        sum(
            count_partitions_exact(n - t, k)
            for k in range(1, n + 1)
            for t in range(0, n - k + 1)
        )
        + 1
    )


def check_clique_squares(table: MulTable) -> bool:
    """Diagonal conditions for a table with all off-diagonal products zero.

    Every square must be 0, the element itself, or a different element
    whose own square is 0.
    """
    ent = table.entries
    m = table.m
    for i in range(1, m + 1):
        sq = ent[i][i]
        if sq == 0 or sq == i:
            continue
        if sq > m or ent[sq][sq] != 0:
            return False
    return True


def _clique_table(n: int, diag: list[int]) -> MulTable:
    grid = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        grid[i][i] = diag[i]
    return MulTable.from_rows(grid)


def _iter_clique_profile_tables(n: int) -> Iterator[MulTable]:
    # The all-idempotent table (the "+1" class).
    yield _clique_table(n, [0] + list(range(1, n + 1)))
    for k in range(1, n + 1):
        for t in range(0, n - k + 1):
            for blocks in iter_partitions_exact(n - t, k):
                diag = [0] * (n + 1)
                for i in range(k + 1, k + t + 1):
                    diag[i] = i
                pos = k + t + 1
                for nil, size in enumerate(blocks, start=1):
                    for _ in range(size - 1):
                        diag[pos] = nil
                        pos += 1
                yield _clique_table(n, diag)


def generate_clique_classes(n: int) -> ClassCatalog:
    """One representative per square profile, re-validated and cataloged."""
    if n < 1:
        raise UsageError("clique size must be >= 1")
    catalog = ClassCatalog()
    for table in _iter_clique_profile_tables(n):
        witness = check_associativity(table)
        if witness is not None:
            raise RuntimeError(f"generated clique table failed associativity: {witness}")
        catalog.insert(table)
    return catalog


# ---------------------------------------------------------------------------
# pendant layout helpers


def _pendant_layout(table: MulTable) -> tuple[int, int, int]:
    """(clique size, pendant id, neighbor id); raises if the graph is wrong."""
    rec = recognize_target(build_zd_graph(table))
    if rec is None or not isinstance(rec.target, CompletePlusEnd):
        raise UsageError("table does not realize a complete graph with one pendant")
    return rec.target.n, rec.pendant, rec.neighbor


def pendant_square_case(table: MulTable) -> str:
    """Which of the four pendant-square cases a table belongs to."""
    _, pendant, neighbor = _pendant_layout(table)
    sq = table.entries[pendant][pendant]
    if sq == 0:
        return "zero"
    if sq == pendant:
        return "self"
    if sq == neighbor:
        return "attach"
    return "other"


def pendant_fixed_points(table: MulTable) -> int:
    """Number of clique elements other than the neighbor fixed by the pendant."""
    _, pendant, neighbor = _pendant_layout(table)
    ent = table.entries
    return sum(
        1
        for i in range(1, table.m + 1)
        if i not in (pendant, neighbor) and ent[i][pendant] == i
    )


# ---------------------------------------------------------------------------
# pendant case checks (on tables with the forced zero pattern)


def check_pendant_square_zero(table: MulTable) -> bool:
    """x*x = 0 case: neighbor squares to 0, every other clique element is
    sent to the neighbor by the pendant and squares to 0 or the neighbor."""
    n, pendant, neighbor = _pendant_layout(table)
    ent = table.entries
    if ent[pendant][pendant] != 0:
        raise UsageError("table is not in the pendant-square-zero case")
    if ent[neighbor][neighbor] != 0:
        return False
    for i in range(1, table.m + 1):
        if i in (pendant, neighbor):
            continue
        if ent[i][pendant] != neighbor:
            return False
        if ent[i][i] not in (0, neighbor):
            return False
    return True


def check_pendant_square_self(table: MulTable) -> bool:
    """x*x = x case: the four structure conditions.

    (1) every non-neighbor clique element is sent by the pendant into the
        non-neighbor clique, and at least one is fixed;
    (2) a non-fixed element maps to a fixed element that squares to 0,
        and itself squares to 0 or the neighbor;
    (3) a fixed element squares to 0, itself, or a fixed element that
        squares to 0;
    (4) the neighbor squares to 0 or itself, and to 0 whenever some
        other element squares to the neighbor.
    """
    n, pendant, neighbor = _pendant_layout(table)
    ent = table.entries
    if ent[pendant][pendant] != pendant:
        raise UsageError("table is not in the pendant-square-self case")
    others = [i for i in range(1, table.m + 1) if i not in (pendant, neighbor)]
    other_set = set(others)
    prod = {i: ent[i][pendant] for i in others}
    # (1)
    if any(prod[i] not in other_set for i in others):
        return False
    fixed = {i for i in others if prod[i] == i}
    if not fixed:
        return False
    # (2)
    for i in others:
        j = prod[i]
        if j == i:
            continue
        if j not in fixed or ent[j][j] != 0:
            return False
        if ent[i][i] not in (0, neighbor):
            return False
    # (3)
    for r in fixed:
        sq = ent[r][r]
        if sq in (0, r):
            continue
        if sq not in other_set:
            return False
        if sq not in fixed or ent[sq][sq] != 0:
            return False
    # (4)
    nb_sq = ent[neighbor][neighbor]
    if nb_sq not in (0, neighbor):
        return False
    if nb_sq == neighbor and any(ent[i][i] == neighbor for i in others):
        return False
    return True


def check_pendant_square_attach(table: MulTable) -> bool:
    """x*x = neighbor case: structurally the same as the zero case.

    The pendant sends every other clique element to the neighbor, the
    neighbor squares to 0, and the rest square to 0 or the neighbor.
    """
    n, pendant, neighbor = _pendant_layout(table)
    ent = table.entries
    if ent[pendant][pendant] != neighbor:
        raise UsageError("table is not in the pendant-square-attach case")
    if ent[neighbor][neighbor] != 0:
        return False
    for i in range(1, table.m + 1):
        if i in (pendant, neighbor):
            continue
        if ent[i][pendant] != neighbor:
            return False
        if ent[i][i] not in (0, neighbor):
            return False
    return True


def check_pendant_square_other(table: MulTable) -> bool:
    """x*x = j for a non-neighbor clique element j: three sub-cases for j."""
    n, pendant, neighbor = _pendant_layout(table)
    ent = table.entries
    j = ent[pendant][pendant]
    if j in (0, pendant, neighbor) or j > table.m:
        raise UsageError("table is not in the pendant-square-other case")
    if ent[neighbor][neighbor] != 0:
        return False
    others = [i for i in range(1, table.m + 1) if i not in (pendant, neighbor, j)]
    for i in others:
        if ent[i][pendant] != neighbor:
            return False
        if ent[i][i] not in (0, neighbor):
            return False
    jx = ent[j][pendant]
    if jx == neighbor:
        return ent[j][j] == 0
    if jx == j:
        return ent[j][j] == j
    if jx in others:
        return ent[j][j] == neighbor and ent[jx][jx] == 0
    return False


def pendant_conditions_hold(table: MulTable) -> bool:
    """Dispatch to the matching case check by the pendant's square."""
    _, pendant, neighbor = _pendant_layout(table)
    sq = table.entries[pendant][pendant]
    if sq == 0:
        return check_pendant_square_zero(table)
    if sq == pendant:
        return check_pendant_square_self(table)
    if sq == neighbor:
        return check_pendant_square_attach(table)
    return check_pendant_square_other(table)


# ---------------------------------------------------------------------------
# pendant case generators (pendant is element m = n+1, neighbor is element 1)


def _pendant_grid(n: int) -> list[list[int]]:
    m = n + 1
    grid = [[0] * (m + 1) for _ in range(m + 1)]
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            grid[u][v] = grid[v][u] = 0
    grid[1][m] = grid[m][1] = 0
    return grid


def _validated(table: MulTable, n: int) -> MulTable:
    witness = check_associativity(table)
    if witness is not None:
        raise RuntimeError(f"generated pendant table failed associativity: {witness}")
    rec = recognize_target(build_zd_graph(table))
    if rec is None or rec.target != CompletePlusEnd(n):
        raise RuntimeError("generated pendant table does not realize its graph")
    return table


def _require_pendant_size(n: int) -> None:
    if n < 3:
        raise UsageError("pendant structure results need clique size >= 3")


def generate_pendant_square_zero(n: int) -> ClassCatalog:
    """x*x = 0 family: choose how many of elements 2..n square to 1."""
    _require_pendant_size(n)
    m = n + 1
    catalog = ClassCatalog()
    for pointer_count in range(n):
        grid = _pendant_grid(n)
        grid[m][m] = 0
        for i in range(2, n + 1):
            grid[i][m] = grid[m][i] = 1
            grid[i][i] = 1 if i - 1 <= pointer_count else 0
        grid[1][1] = 0
        catalog.insert(_validated(MulTable.from_rows(grid), n))
    return catalog


def generate_pendant_square_attach(n: int) -> ClassCatalog:
    """x*x = 1 family: choose how many of elements 2..n square to 1.

    Same shape as the zero family with the pendant square moved to the
    neighbor, hence n classes (the all-nilpotent table is the
    originally tabulated single class).
    """
    _require_pendant_size(n)
    m = n + 1
    catalog = ClassCatalog()
    for pointer_count in range(n):
        grid = _pendant_grid(n)
        grid[m][m] = 1
        for i in range(2, n + 1):
            grid[i][m] = grid[m][i] = 1
            grid[i][i] = 1 if i - 1 <= pointer_count else 0
        grid[1][1] = 0
        catalog.insert(_validated(MulTable.from_rows(grid), n))
    return catalog


def generate_pendant_square_other(n: int) -> ClassCatalog:
    """x*x = 2 family: all labelled tables satisfying the three sub-cases."""
    _require_pendant_size(n)
    m = n + 1
    catalog = ClassCatalog()
    rest = list(range(3, n + 1))

    def emit(px2: int, sq2: int, forced_zero: int | None, free: list[int]) -> None:
        for squares in itertools.product((0, 1), repeat=len(free)):
            grid = _pendant_grid(n)
            grid[m][m] = 2
            grid[1][1] = 0
            grid[2][m] = grid[m][2] = px2
            grid[2][2] = sq2
            for i in rest:
                grid[i][m] = grid[m][i] = 1
            if forced_zero is not None:
                grid[forced_zero][forced_zero] = 0
            for i, sq in zip(free, squares):
                grid[i][i] = sq
            catalog.insert(_validated(MulTable.from_rows(grid), n))

    emit(1, 0, None, rest)  # pendant sends 2 to the neighbor
    emit(2, 2, None, rest)  # pendant fixes 2, which is idempotent
    for r in rest:  # pendant sends 2 to another clique element r
        emit(r, 1, r, [i for i in rest if i != r])
    return catalog


@dataclass(frozen=True)
class PendantSelfResult:
    """Classes of the x*x = x case plus their fixed-point stratification."""

    catalog: ClassCatalog
    by_fixed_points: dict[int, int]

    @property
    def class_count(self) -> int:
        return self.catalog.class_count


def _iter_self_case_tables(n: int) -> Iterator[tuple[MulTable, int]]:
    """All labelled tables meeting the x*x = x conditions, with their r."""
    m = n + 1
    others = list(range(2, n + 1))
    for targets in itertools.product(others, repeat=n - 1):
        prod = dict(zip(others, targets))
        fixed = [i for i in others if prod[i] == i]
        if not fixed:
            continue
        fixed_set = set(fixed)
        if any(prod[i] not in fixed_set for i in others):
            continue
        hit = {prod[i] for i in others if prod[i] != i}
        domains = []
        for i in range(1, n + 1):
            if i == 1:
                domains.append((0, 1))
            elif i in hit:
                domains.append((0,))
            elif i in fixed_set:
                domains.append((0, i, *(j for j in fixed if j != i)))
            else:
                domains.append((0, 1))
        for diag in itertools.product(*domains):
            ok = True
            for r in fixed:
                sq = diag[r - 1]
                if sq not in (0, r) and diag[sq - 1] != 0:
                    ok = False
                    break
            if not ok:
                continue
            if diag[0] == 1 and any(diag[i - 1] == 1 for i in others):
                continue
            grid = _pendant_grid(n)
            grid[m][m] = m
            for i in others:
                grid[i][m] = grid[m][i] = prod[i]
            for i in range(1, n + 1):
                grid[i][i] = diag[i - 1]
            yield MulTable.from_rows(grid), len(fixed)


def generate_pendant_square_self(n: int) -> PendantSelfResult:
    """Enumerate the x*x = x case from its conditions and classify.

    Labelled tables are grouped by the pendant-pinned key first; one full
    canonicalization per group then yields the catalog keys.
    """
    _require_pendant_size(n)
    m = n + 1
    groups: dict[tuple, list[tuple[MulTable, int]]] = {}
    for table, r in _iter_self_case_tables(n):
        _validated(table, n)
        groups.setdefault(pendant_pinned_key(table, m, 1), []).append((table, r))
    catalog = ClassCatalog()
    key_fixed: dict[tuple, int] = {}
    for pinned in sorted(groups):
        members = groups[pinned]
        full = canonical_form(members[0][0])
        for table, r in members:
            catalog.insert(table, key=full)
            prev = key_fixed.setdefault(full, r)
            if prev != r:
                raise RuntimeError("fixed-point count is not constant on a class")
    by_fixed: dict[int, int] = {}
    for r in key_fixed.values():
        by_fixed[r] = by_fixed.get(r, 0) + 1
    return PendantSelfResult(catalog, dict(sorted(by_fixed.items())))


# ---------------------------------------------------------------------------
# pendant case bookkeeping


PENDANT_CASES = ("zero", "self", "attach", "other")


@dataclass(frozen=True)
class PendantBreakdown:
    """Per-case catalogs for one pendant target."""

    n: int
    catalogs: dict[str, ClassCatalog]
    by_fixed_points: dict[int, int]

    @property
    def case_counts(self) -> dict[str, int]:
        return {case: self.catalogs[case].class_count for case in PENDANT_CASES}

    @property
    def total(self) -> int:
        return sum(c.class_count for c in self.catalogs.values())

    def merged_catalog(self) -> ClassCatalog:
        merged = ClassCatalog()
        for case in PENDANT_CASES:
            merged.merge(self.catalogs[case])
        return merged


def pendant_case_breakdown(n: int) -> PendantBreakdown:
    _require_pendant_size(n)
    self_result = generate_pendant_square_self(n)
    catalogs = {
        "zero": generate_pendant_square_zero(n),
        "self": self_result.catalog,
        "attach": generate_pendant_square_attach(n),
        "other": generate_pendant_square_other(n),
    }
    return PendantBreakdown(n, catalogs, self_result.by_fixed_points)


def fixed_points_formula(n: int, r: int) -> int:
    """Stated stratum counts for the x*x = x case, generator fallback elsewhere.

    r = 1 gives n; r = 2 is the piecewise 3 / 9 / 4(n-1) for n = 3 / 4 / >= 5
    (preferred over the r = n-1 rule when both apply, i.e. at n = 3);
    r = n-1 gives twice the clique count at n-1.  Other strata have no
    stated closed value and fall back to the enumerated count.
    """
    _require_pendant_size(n)
    if not 1 <= r <= n - 1:
        raise UsageError(f"fixed-point count must lie in 1..{n - 1}")
    if r == 1:
        return n
    if r == 2:
        if n == 3:
            return 3
        if n == 4:
            return 9
        return 4 * (n - 1)
    if r == n - 1:
        return 2 * clique_class_count(n - 1)
    return generate_pendant_square_self(n).by_fixed_points.get(r, 0)


def pendant_class_total(n: int) -> int:
    """Total pendant classes, summed over the four case catalogs.

    With the attach case corrected to n classes this is the x*x = x
    count plus 5n - 4.  The historical rule "self count plus 4n - 3"
    undercounts by n - 1 and is reported as a discrepancy, not used.
    """
    _require_pendant_size(n)
    return pendant_case_breakdown(n).total


def pendant_self_formula(n: int) -> int:
    """x*x = x class count assembled from the stated stratum values."""
    _require_pendant_size(n)
    return sum(fixed_points_formula(n, r) for r in range(1, n))


def pendant_total_formula(n: int) -> int:
    """Formula-method total: stated strata plus the closed per-case counts.

    The per-case terms are n (zero), n (attach, corrected) and 3n - 4
    (other).  Where a stated stratum value is wrong (r = 2 at n = 3)
    this deviates from the enumerated total; the reports surface that.
    """
    return pendant_self_formula(n) + 5 * n - 4
