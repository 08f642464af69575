"""
The involution module and the map eta
=====================================

Exact computations in Q(u).  The map eta sends the basis vector a_w to an
element of the Hecke algebra by running along any reduced I-expression of w.
"""

from twinv import GroupType, all_involutions, eta, eta_table, verify_eta, x_empty
from twinv.hecke import eta_json

# Rank one: two group elements, two involutions.
b1 = GroupType("B", 1)
print("X =", x_empty(b1))
print("eta(a_s0) =", eta(b1, b1.generator(0), (0,)))

# In B_2 every involution gets the same image whichever expression is used.
b2 = GroupType("B", 2)
table = eta_table(b2)
for w in all_involutions(b2):
    print(w, "->", len(table[w]), "nonzero T-coefficients")

# One coefficient list in the report format used by the CLI.
w0 = max(all_involutions(b2), key=b2.length)
for row in eta_json(b2, w0, (1, 0, 1))["coefficients"][:4]:
    print("   ", row["element"], row["ratfunc_string"])

# Well-definedness, the homomorphism property and full rank at once.
for gt in (b1, b2, GroupType("D", 3), GroupType("B", 3)):
    r = verify_eta(gt)
    cert = r["rank_certificate"]
    print(f"{gt}: well-defined={r['well_defined']} hom={r['homomorphism']} "
          f"rank {cert['rank']}/{r['involutions']} at u={cert['point']}; "
          f"Laurent coefficients: {r['laurent_coefficients_observed']}")
