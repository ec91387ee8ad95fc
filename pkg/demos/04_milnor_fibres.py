"""Milnor fibres of map germs and a consistency check.

The Euler characteristic of the Milnor fibre fixes the Euler characteristic
of every link L_I.  Computing the links independently and comparing them with
that table can show that a germ admits no tube fibration at all.
"""

from milnorchi import (
    MilnorInvariants, WeightedType, boundary_chi, link_chi, link_table, parse_polynomial, verify_all,
)

inv = MilnorInvariants(n=6, k=2, chi_MF=2, milnor_ab_asserted=True)
t = link_table(inv)
print("n = 6, chi(M_F) = 2:", dict(t.chi_L))
print("boundary of M_F (dimension 4):", boundary_chi(2, 4))

# (P, Q) in R^3 with P a cubic cone and Q a linear form
V = ("x", "y", "z")
P = parse_polynomial("z*x^2 + z*y^2 + y^3", V)
Q = parse_polynomial("x", V)
chi_P, how_P = link_chi(P, WeightedType((1, 1, 1), 3))
chi_Q, how_Q = link_chi(Q)
print(f"chi(L_P) = {chi_P} ({how_P}), chi(L_Q) = {chi_Q} ({how_Q})")

report = verify_all(MilnorInvariants(3, 2, None, True),
                    {"links": [("P", 1, chi_P), ("Q", 1, chi_Q)]})
for row in report.rows:
    print(f"  {row.verdict:18s} {row.name}: expected {row.expected}, got {row.computed}")
print("asserted conditions refuted:", report.hypothesis_refuted)
