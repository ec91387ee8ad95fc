"""Euler characteristics of links of weighted homogeneous hypersurfaces.

The link of {f = 0} is its intersection with a small sphere.  Two auxiliary
germs built from f and its weights carry the answer in their local degrees.
"""

from milnorchi import (
    WeightedType, link_euler, link_euler_odd, parse_polynomial,
    szafraniec_setup, variety_link_euler,
)

# a cubic cone in R^3
V3 = ("x", "y", "z")
P = parse_polynomial("z*x^2 + z*y^2 + y^3", V3)
w = WeightedType((1, 1, 1), 3)
data = szafraniec_setup(P, w)
print("auxiliary germ:", [str(h) for h in data.H1])
res = link_euler_odd(P, w)
print("deg H1 =", res.deg1, " chi(link) =", res.chi)

# the real part of a complex polynomial in R^6
V6 = ("x1", "x2", "y1", "y2", "z1", "z2")
g = parse_polynomial("z1*(x1^2 - x2^2) - 2*z2*x1*x2 + y1^2 - y2^2", V6)
res = link_euler(g, WeightedType((2, 2, 3, 3, 2, 2), 6))
print("R^6 example: degrees", res.deg1, res.deg2, " chi(link) =", res.chi)

# links of arbitrary varieties through a sum of squares
V2 = ("x", "y")
for fs, V in [(["x", "y"], V3), (["x^2 - y^2"], V2), (["x^3 - 3*x*y^2"], V2)]:
    chi, k = variety_link_euler([parse_polynomial(s, V) for s in fs])
    print(f"{fs} in R^{len(V)}: chi(link) = {chi} (settled at k = {k})")
