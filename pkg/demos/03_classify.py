"""Is X good at (n, r)?

X is good when no left-compressed intersecting family has more members
meeting X than the star at 1. Two small counterexamples, 23k and 3j, are
beaten by the family generated by {2,3}.
"""
from lcif import Params, XSet, classify_at

p = Params(10, 3)
for raw in [(2, 3, 9), (3, 9), (2, 4, 6), (5, 7)]:
    v = classify_at(XSet.from_elements(raw, p.r), p)
    status = "good" if v.good else "not good"
    print(f"X={raw}: {status}")
    for w in v.witnesses:
        print(f"    beaten by {w.family.pretty()}: {w.family_count} > {w.star_count}")
