"""The linear algebra behind intrinsic formality of H.

Run: python demos/05_formality.py
"""

import random

from bigbracket.bracket import pairing_gram
from bigbracket.formality import (
    boundary_construct,
    degree_census,
    h1_vanishing_check,
    invariant_form_space,
    proportionality,
    random_symmetric,
)

# A total-degree-1 cochain with p + 1 inputs lands in the (4 - 2(p+1))-th power of W.
for p in range(4):
    print("census", degree_census(p))

# Every symmetric form on W is Q_l of some g: W -> W, namely g = B^{-1} F / 2.
rng = random.Random(0)
F = random_symmetric(2, rng)
g = boundary_construct(F, 2)
print("random symmetric F:")
for row in F.to_dense():
    print("   ", [str(v) for v in row])
print("its boundary preimage g:")
for row in g.to_dense():
    print("   ", [str(v) for v in row])

for d in (1, 2, 3, 4):
    rep = h1_vanishing_check(d)
    print(f"dim V = {d}: {rep.forms_checked} elementary forms are boundaries, rank Q_l = {rep.ce_rank}, ok = {rep.ok}")

for d in (1, 2, 3):
    dim, basis = invariant_form_space(d)
    print(f"gl({d})-invariant symmetric forms on V + V*: dim {dim}, ratio to the pairing {proportionality(basis[0], pairing_gram(d))}")
