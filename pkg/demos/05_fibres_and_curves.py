"""Fibres of functions, half-branches of curves and a parity bit."""

from milnorchi import (
    aoki_semibranches, dutertre_mod2, fukui_D, khimshiashvili_chi, parse_polynomial,
)

V = ("x", "y")
P = lambda s, V=V: parse_polynomial(s, V)

# chi of {f = delta} near a critical point, on both sides of the critical value
for s in ("x^2 + y^2", "x^2 - y^2", "x^3 - 3*x*y^2"):
    print(f"{s}: chi(f = +d) = {khimshiashvili_chi(P(s), '+')}, chi(f = -d) = {khimshiashvili_chi(P(s), '-')}")

# difference of the fibre on the two sides of the hyperplane x = 0
print("fukui D(y^2 - x^3) =", fukui_D(P("y^2 - x^3")))
print("parity bit for (y^2 - x^3, x) =", dutertre_mod2([P("y^2 - x^3"), P("x")]))

# number of half-branches of plane and space curves
print("half-branches of x^2 - y^2:", aoki_semibranches([P("x^2 - y^2")]))
V3 = ("x", "y", "z")
print("half-branches of {x^3 - 3xy^2 = z = 0}:",
      aoki_semibranches([P("x^3 - 3*x*y^2", V3), P("z", V3)]))
