"""Gerstenhaber-Schack cohomology of small bialgebras from structure constants.

Run: python demos/03_gs_cohomology.py
"""

import time

from bigbracket.gs import builtin_bialgebra, check_square_zero, gs_cohomology

for name, top in [("trivial", 4), ("group_z2", 4), ("dual_group_z2", 4), ("group_z3", 4), ("sweedler4", 3)]:
    A = builtin_bialgebra(name)
    t0 = time.perf_counter()
    sq = check_square_zero(A, top)
    print(f"{name:14s} n={A.n}  d1^2, d2^2, d1d2+d2d1 on blocks p+q<={top}: {'zero' if sq.ok else sq.failures}"
          f"  ({time.perf_counter() - t0:.2f}s)")

# Group algebras over Q are rigid; the Sweedler algebra has a one-dimensional H^2.
for name in ("group_z2", "group_z3", "sweedler4"):
    dims = gs_cohomology(builtin_bialgebra(name), 4)
    print(f"H_GS({name}) up to degree 3:", dims)
