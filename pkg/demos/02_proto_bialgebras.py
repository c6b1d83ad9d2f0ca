"""Degree-3 elements of H as proto-Lie bialgebras: MC test, type, deformation cohomology.

Run: python demos/02_proto_bialgebras.py
"""

from bigbracket import Element, ProtoStructure, classify_proto, deformation_cohomology, lambda_element, mc_check
from bigbracket.lie import LieAlgebraData, builtin_lie

# A Lie algebra structure is an element lambda of V (x) wedge^2 V*; Jacobi becomes [lambda, lambda] = 0.
g = builtin_lie("nonabelian2")
lam = lambda_element(g)
print("lambda for [x1, x2] = x2:", lam)
print("[lambda, lambda] =", mc_check(lam)[0])

bad = LieAlgebraData(3, [(1, 2, 3, 1), (2, 3, 1, 1), (1, 3, 1, -1)], check=False)
print("bracket breaking Jacobi gives [lambda, lambda] =", mc_check(lambda_element(bad))[0])

# Adding a wedge^3 V part keeps the MC equation here and changes the type.
e = Element.e
h = lambda_element(builtin_lie("heisenberg3")) + (e(1) * e(2) * e(3)).scale(2)
print("heisenberg + 2 e1e2e3 is a", classify_proto(h).value)

for name in ("abelian2", "nonabelian2"):
    dims = deformation_cohomology(ProtoStructure(lambda_element(builtin_lie(name)), 2))
    print(f"H(H, ad_lambda) for {name}:", [dims[n] for n in sorted(dims)])
