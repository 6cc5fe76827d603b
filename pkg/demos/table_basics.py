"""Walkthrough of the core objects: tables, associativity, graphs.

Run with:  python demos/table_basics.py
"""

from zdsemigroups import (
    MulTable,
    build_zd_graph,
    check_associativity,
    graph_to_dot,
    is_zd_semigroup,
    recognize_target,
    zero_divisors,
)


def clique_table(diag):
    n = len(diag)
    grid = [[0] * (n + 1) for _ in range(n + 1)]
    for i, sq in enumerate(diag, start=1):
        grid[i][i] = sq
    return MulTable.from_rows(grid)


print("=" * 64)
print("1. A 3-element table with every product zero (the null semigroup)")
print("=" * 64)
t = clique_table([0, 0, 0])
print("associativity witness:", check_associativity(t))
print("zero divisors:", sorted(zero_divisors(t)))
print("valid zero-divisor semigroup:", is_zd_semigroup(t))
g = build_zd_graph(t)
print("graph:", recognize_target(g))
print()

print("=" * 64)
print("2. A bad square assignment is caught with a witness")
print("=" * 64)
# 1*1 = 2 forces 2*2 = 0; making element 2 idempotent breaks the law
bad = clique_table([2, 2])
w = check_associativity(bad)
print(f"first failing triple: ({w.u}*{w.v})*{w.w} = {w.lhs}  but  "
      f"{w.u}*({w.v}*{w.w}) = {w.rhs}")
print()

print("=" * 64)
print("3. Squares may point at a nilpotent: 1*1 = 2 with 2*2 = 0")
print("=" * 64)
ok = clique_table([2, 0, 0])
print("associativity witness:", check_associativity(ok))
print("classifies as:", recognize_target(build_zd_graph(ok)))
print()

print("=" * 64)
print("4. A pendant-shaped table and its DOT export")
print("=" * 64)
grid = [[0] * 5 for _ in range(5)]
grid[2][4] = grid[4][2] = 1  # pendant products land on the neighbor
grid[3][4] = grid[4][3] = 1
pend = MulTable.from_rows(grid)
rec = recognize_target(build_zd_graph(pend))
print("recognized:", rec)
print(graph_to_dot(build_zd_graph(pend), pendant=rec.pendant))
