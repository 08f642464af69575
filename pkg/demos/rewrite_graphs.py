"""
Rewrite graphs and the two long rules
=====================================

Connect the reduced I-expressions of an involution by single rule
applications.  With every rule on, each graph is connected.  Switching off
the long right-end rule (D7 for type D, B6 for type B) splits a graph.
"""

from twinv import GroupType, eval_iexpr, parse_word, rewrite_graph, rule_ids, verify_connectivity
from twinv import find_ablation_witness

# The smallest interesting picture: two commuting generators of D_2.
d2 = GroupType("D", 2)
print(rewrite_graph(d2, eval_iexpr(d2, parse_word("u,1"))).to_dot())

# The longest element of D_4 has 240 reduced I-expressions.
d4 = GroupType("D", 4)
w0 = eval_iexpr(d4, parse_word("2,3,u,1,2,u,1,3"))
full = rewrite_graph(d4, w0)
print(len(full.nodes), "nodes,", len(full.edges), "edges,", full.component_count(), "component")

# Drop D7 and the same vertex set falls apart.
cut = rewrite_graph(d4, w0, [r for r in rule_ids(d4) if r != "D7"])
print("without D7:", [len(c) for c in cut.components()], "nodes per component")

# Exhaustive checks over whole groups.
for fam, n in (("D", 3), ("D", 4), ("B", 3)):
    rep = verify_connectivity(GroupType(fam, n))
    print(f"{fam}{n}: {len(rep['involutions'])} involutions, all connected = {rep['passed']}")

# The type B counterpart already shows up at rank 3.
print(find_ablation_witness("B", "B6", [3, 4]))

# Write the full D_4 graph for graphviz; `dot -Tsvg w0.dot` renders it.
with open("w0.dot", "w") as fh:
    fh.write(full.to_dot("w0"))
