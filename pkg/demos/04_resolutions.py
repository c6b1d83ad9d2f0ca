"""H_GS(U g) through the induced and coinduced resolutions of U(g).

Run: python demos/04_resolutions.py
"""

from fractions import Fraction

from bigbracket.graded import Element
from bigbracket.lie import abelian, builtin_lie
from bigbracket.linalg import cohomology_dims
from bigbracket.tetra import (
    Enveloping,
    abelian_transport_check,
    coinduced_coboundary,
    coinduced_complex,
    h_from_hom,
    hom_complex,
    hom_from_h,
    induced_boundary,
    induced_complex,
    yoneda_product,
)

U = Enveloping(builtin_lie("nonabelian2"))
one = (0, 0)
print("boundary of 1 (x) x1^x2 (x) 1 in U(nonabelian2):")
for (a, N, b), c in sorted(induced_boundary(U, {(one, 0b11, one): Fraction(1)}).items()):
    print(f"    {'+' if c > 0 else '-'}{abs(c)} * x^{a} (x) wedge{N:02b} (x) x^{b}")

U1 = Enveloping(abelian(1))
print("coboundary of x^2 (x) 1 (x) 1:", coinduced_coboundary(U1, {((2,), 0, (0,)): Fraction(1)}))

for name in ("abelian2", "nonabelian2", "heisenberg3"):
    g = builtin_lie(name)
    P, Q = induced_complex(g, 3), coinduced_complex(g, 3)
    print(f"{name}: truncated P and Q square to zero: {P.is_square_zero() and Q.is_square_zero()};"
          f" H(P) = {cohomology_dims(P)}")
    print(f"    H(wedge g (x) wedge g*, ad_lambda) = {cohomology_dims(hom_complex(g))}")

# For abelian g the Yoneda product is the product of H.
e, f = Element.e, Element.f
u, v = hom_from_h(e(1), 2), hom_from_h(f(1) * f(2), 2)
print("e1 . f1f2 via Yoneda:", h_from_hom(yoneda_product(u, v, abelian(2))), " in H:", e(1) * f(1) * f(2))

rep = abelian_transport_check(2, 2)
print(f"transported differential, dim 2, cap 2: {rep.maps_checked} maps checked, vanishes: {rep.ok}")
