"""Local versus global standard bases.

A unit such as 1 + x disappears from the local ring, so the local quotient
only counts the zero at the origin.
"""

from milnorchi import compute_standard_basis, normal_form, parse_polynomial, quotient_basis
from milnorchi.standard_basis import GLOBAL, LOCAL

V = ("x", "y")
gens = [parse_polynomial(s, V) for s in ("x^2 + x^3", "y^2 - x*y^2")]

for order in (LOCAL, GLOBAL):
    sb = compute_standard_basis(gens, order)
    q = quotient_basis(sb)
    print(order.name)
    print("  basis:", [str(g) for g in sb.generators])
    print("  monomials below the staircase:", q.basis)
    print("  dimension:", q.dimension)

# the Milnor number of the cusp: dim of O / (f_x, f_y)
f = parse_polynomial("y^2 - x^3", V)
sb = compute_standard_basis([f.diff("x"), f.diff("y")], LOCAL)
print("mu(y^2 - x^3) =", quotient_basis(sb).dimension)
print("normal form of x^2*y + x^3:", normal_form(parse_polynomial("x^2*y + x^3", V), sb))
