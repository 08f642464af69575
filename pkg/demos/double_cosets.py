"""
Minimal double-coset representatives
====================================

For two descents s, t of an involution w, the minimal element b of
W_K w W_K (K = {s, t}) is again an involution and w is an alternating
prefix folded onto b.  Seven cases arise; the classification tables say
what b can look like when it has no descent commuting with both s and t.
"""

from collections import Counter

from twinv import GroupType, LEMMAS, all_involutions, classify_double_coset, verify_classification

# How often each case occurs in D_4 and B_3.
for gt in (GroupType("D", 4), GroupType("B", 3)):
    seen = Counter()
    for w in all_involutions(gt):
        desc = sorted(gt.descents_left(w), key=str)
        for s in desc:
            for t in desc:
                if s != t:
                    seen[classify_double_coset(gt, w, s, t).case_id] += 1
    print(gt, dict(sorted(seen.items())))

# A single report, spelled out.
d4 = GroupType("D", 4)
w0 = max(all_involutions(d4), key=d4.length)
rep = classify_double_coset(d4, w0, 2, 3)
print(f"w={w0} s=2 t=3 -> case {rep.case_id}, b={rep.b}, prefix {rep.expression()}")

# The classification tables, checked exhaustively.
for lid, gt in (("D-case4", d4), ("D-case6", GroupType("D", 5)), ("B-case6", GroupType("B", 4))):
    r = verify_classification(lid, gt)
    hits = {k: v["count"] for k, v in r["alternatives"].items() if v["count"]}
    print(f"{lid} on {gt}: {r['instances']} instances, uncovered={len(r['uncovered'])}, hits {hits}")

print("tables:", ", ".join(f"{k} (type {v['family']}, case {v['case']})" for k, v in LEMMAS.items()))
