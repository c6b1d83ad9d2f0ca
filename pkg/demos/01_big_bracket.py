"""The big bracket on H = wedge(V) (x) wedge(V*) for a small V.

Run: python demos/01_big_bracket.py
"""

from bigbracket import Element, bracket, bracket_oracle, enumerate_basis, pairing_gram, verify_poisson

e, f = Element.e, Element.f

print("Degree-2 basis for dim V = 2:", [str(m) for m in enumerate_basis(2, 2)])

# Generators are odd, so reordering costs a sign.
print("f1 * e1 =", f(1) * e(1))

# On generators the bracket is the duality pairing, and it lowers degree by 2.
print("[e1, f1] =", bracket(e(1), f(1)))
print("[e1 f1, e1] =", bracket(e(1) * f(1), e(1)))
x, y = e(1) * f(2), e(2) * f(1) * f(2)
print(f"[{x}, {y}] =", bracket(x, y))
print("second-derivative oracle agrees:", bracket(x, y) == bracket_oracle(x, y))

print("Gram matrix of the pairing on W, dim V = 2:")
for row in pairing_gram(2).to_dense():
    print("   ", [str(v) for v in row])

for d in (1, 2, 3):
    rep = verify_poisson(d)
    print(f"dim V = {d}: checked {rep.checked}, violations: {len(rep.violations)}")
