"""
From bounds to exact values
===========================

Lower bounds from cup-length and upper bounds from dimension and
connectivity are pushed through the comparison inequalities between
tc_n, TC_n and their loop versions until nothing changes.
"""

from basedtc import INF, default_grid, space, space_table, tc_table

table = space_table(space("sphere", 2), 4)
for q in table.quantities():
    lo, hi = table.interval(q.kind, q.j)
    chain_lo, chain_hi = table.provenance(q)
    print(f"{str(q):<9} [{lo}, {'inf' if hi == INF else int(hi)}]   "
          f"lower via {' > '.join(chain_lo)}; upper via {' > '.join(chain_hi)}")

# The whole grid: every cell should be resolved to the known closed form
cells = tc_table(default_grid(), 4)
rows = {}
for c in cells:
    rows.setdefault(c.space, []).append(int(c.lower) if c.resolved else "?")
for name in ["sphere:3", "spheres:2:3", "torus-sum:2", "proj-sum:3", "rp:4", "cp:3", "conf:3:4"]:
    print(f"{name:<12}", rows[name])
print(sum(c.matches for c in cells), "of", len(cells), "cells match")
