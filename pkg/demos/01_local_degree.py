"""Local degree of a plane germ, three ways.

The signature of a bilinear form on the local algebra, the turning number of
H along a small circle, and the count of the fibre for a complex power.
"""

from fractions import Fraction

from milnorchi import (
    MapGerm, OracleConfig, exact_signature, gram_form, local_algebra,
    local_degree, parse_polynomial, winding_degree,
)

V = ("x", "y")

# z -> z^3 written in real coordinates
H = MapGerm(tuple(parse_polynomial(s, V) for s in ("x^3 - 3*x*y^2", "3*x^2*y - y^3")))

alg = local_algebra(H)
print("local algebra basis:", alg.basis)
print("dimension (mu):", alg.dimension)

form = gram_form(H, alg=alg)
sig = exact_signature(form.matrix)
print("positive / negative / zero eigenvalues:", sig.n_plus, sig.n_minus, sig.n_zero)
print("signature = local degree:", sig.signature)

# a geometric count that never touches the algebra
print("winding number on |x| = 1/4:", winding_degree(H, OracleConfig(radius=Fraction(1, 4))))

# the degree flips with orientation and vanishes for even powers
for comps in [("x", "y"), ("x", "-y"), ("x^2", "y"), ("x^3", "y"), ("y^2 - x^3", "2*y")]:
    G = MapGerm(tuple(parse_polynomial(s, V) for s in comps))
    print(f"deg {comps} = {local_degree(G)}")
