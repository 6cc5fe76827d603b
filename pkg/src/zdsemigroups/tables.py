"""Dense multiplication tables for finite commutative semigroups with zero.

A table lives on the ground set {0, 1, ..., m}: index 0 is the absorbing
zero element (0x = 0 for every x) and indices 1..m are the nonzero
elements.  The full (m+1) x (m+1) grid is stored, so lookups are plain
indexing.  Symmetry and the zero row/column are enforced at construction,
which makes every ``MulTable`` commutative with absorbing zero *by
construction*; associativity is a separate property checked on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import UsageError


class AssocWitness(NamedTuple):
    """First failing triple of the associative law, in lexicographic order.

    ``lhs`` is (uv)w and ``rhs`` is u(vw) as read off the table.
    """

    u: int
    v: int
    w: int
    lhs: int
    rhs: int


@dataclass(frozen=True)
class MulTable:
    """Immutable symmetric multiplication table with absorbing zero."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        ent = self.entries
        size = len(ent)
        if size < 2:
            raise UsageError("table needs the zero element and at least one nonzero element")
        m = size - 1
        for row in ent:
            if len(row) != size:
                raise UsageError("table grid must be square")
            for val in row:
                if not (0 <= val <= m):
                    raise UsageError(f"entry {val} outside element range 0..{m}")
        for u in range(size):
            if ent[0][u] != 0 or ent[u][0] != 0:
                raise UsageError("zero row/column must be identically zero")
        for u in range(size):
            for v in range(u + 1, size):
                if ent[u][v] != ent[v][u]:
                    raise UsageError(f"table is not symmetric at ({u}, {v})")

    @property
    def m(self) -> int:
        """Number of nonzero elements."""
        return len(self.entries) - 1

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "MulTable":
        return cls(tuple(tuple(int(v) for v in row) for row in rows))


def mul(table: MulTable, u: int, v: int) -> int:
    """Product of two elements; raises ``UsageError`` on out-of-range ids."""
    m = table.m
    if not (0 <= u <= m and 0 <= v <= m):
        raise UsageError(f"element ids must lie in 0..{m}, got ({u}, {v})")
    return table.entries[u][v]


def check_associativity(table: MulTable) -> Optional[AssocWitness]:
    """Scan all nonzero triples (u, v, w) in lexicographic order.

    Returns ``None`` when (uv)w = u(vw) for every triple, otherwise the
    first failing witness.  Triples involving 0 hold trivially and are
    skipped.
    """
    ent = table.entries
    m = table.m
    for u in range(1, m + 1):
        row_u = ent[u]
        for v in range(1, m + 1):
            uv = row_u[v]
            row_v = ent[v]
            for w in range(1, m + 1):
                lhs = ent[uv][w]
                rhs = row_u[row_v[w]]
                if lhs != rhs:
                    return AssocWitness(u, v, w, lhs, rhs)
    return None


def zero_divisors(table: MulTable) -> set[int]:
    """Nonzero elements u with uv = 0 for some nonzero v (v = u allowed)."""
    ent = table.entries
    m = table.m
    return {
        u
        for u in range(1, m + 1)
        if any(ent[u][v] == 0 for v in range(1, m + 1))
    }


def is_zd_semigroup(table: MulTable) -> bool:
    """True iff the table is associative and every nonzero element is a zero divisor."""
    if check_associativity(table) is not None:
        return False
    return zero_divisors(table) == set(range(1, table.m + 1))


def permute_table(table: MulTable, perm: Sequence[int]) -> MulTable:
    """Relabel nonzero elements by ``perm`` (perm[u] = new id of u, perm[0] = 0)."""
    m = table.m
    if len(perm) != m + 1 or perm[0] != 0 or sorted(perm) != list(range(m + 1)):
        raise UsageError("perm must be a permutation of 0..m fixing 0")
    ent = table.entries
    grid = [[0] * (m + 1) for _ in range(m + 1)]
    for u in range(1, m + 1):
        for v in range(1, m + 1):
            grid[perm[u]][perm[v]] = perm[ent[u][v]]
    return MulTable.from_rows(grid)


def table_to_json(table: MulTable) -> dict:
    """JSON form ``{"m": ..., "entries": [[...]]}`` with the full grid."""
    return {"m": table.m, "entries": [list(row) for row in table.entries]}


def table_from_json(obj: dict) -> MulTable:
    """Parse and validate the JSON form; rejects malformed grids."""
    if not isinstance(obj, dict) or "m" not in obj or "entries" not in obj:
        raise UsageError("table JSON needs 'm' and 'entries' fields")
    entries = obj["entries"]
    if len(entries) != obj["m"] + 1:
        raise UsageError("entries grid does not match declared element count")
    return MulTable.from_rows(entries)
