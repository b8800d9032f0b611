"""Goodness for all large n, with the exact threshold.

The difference between the star count and a family count is a polynomial
in t = n - 2r; its sign for large t decides eventual goodness. The
threshold reported is the least n from which X stays good.
"""
from itertools import combinations

from lcif import XSet, classify_eventual, theorem_main_predicate

r = 4
worst = 0
for k in range(1, r + 1):
    for inside in combinations(range(2, 2 * r + 1), k):
        x = XSet(inside)
        v = classify_eventual(x, r)
        assert v.eventually_good == theorem_main_predicate(x, r)
        if v.eventually_good:
            worst = max(worst, v.threshold)
print(f"r={r}: every X in [2, {2 * r}] with |X| <= r matches the closed-form rule")
print(f"largest threshold among eventually good X: n = {worst} (2r+2 = {2 * r + 2})")
for inside in [(7,), (2, 3, 4), (2, 4, 6)]:
    v = classify_eventual(XSet(inside), r)
    print(f"  X={inside}: eventually good={v.eventually_good}, threshold={v.threshold}")
