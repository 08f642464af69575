"""
Involutions and their reduced I-expressions
===========================================

A walk through the twisted operation on W(D_4): build involutions one
generator at a time, watch rho climb, and list every reduced I-expression of
the longest element.
"""

from twinv import GroupType, all_involutions, enumerate_reduced_iexprs, eval_iexpr, rho, twisted_mult
from twinv import parse_word, format_word

d4 = GroupType("D", 4)
print(d4, "has", d4.order(), "elements and", len(all_involutions(d4)), "involutions")

# s ⋉ w is s*w when s and w commute, s*w*s otherwise.  Folding a word from the
# right starts at the identity.
w = d4.identity()
for s in reversed(parse_word("2,3,u,1,2,u,1,3")):
    w = twisted_mult(d4, s, w)
    print(f"after {s!s:>2}: {w}  rho={rho(d4, w)}  length={d4.length(w)}")

# The two words differ by the long right-end move and land on the same element.
left = eval_iexpr(d4, parse_word("2,3,u,1,2,u,1,3"))
right = eval_iexpr(d4, parse_word("3,2,u,1,2,u,1,3"))
print("same involution:", left == right, left)

# Every reduced I-expression of the longest element has length rho = 8.
words = enumerate_reduced_iexprs(d4, left)
print(len(words), "reduced I-expressions, e.g.")
for v in words[:5]:
    print("   ", format_word(v))

# rho versus length over all involutions
table = {}
for x in all_involutions(d4):
    table.setdefault(rho(d4, x), []).append(d4.length(x))
for r in sorted(table):
    print(f"rho={r}: {len(table[r]):2d} involutions, lengths {sorted(set(table[r]))}")
