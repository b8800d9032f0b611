"""Minimal good sets at r = 5, n = 10.

Goodness is upward closed in the shift order on equal-size sets, so the
good sets of one size are described by their minimal elements. Sizes 2
and 3 each have exactly one. Takes a few seconds.
"""
from lcif import Params, minimal_good

p = Params(10, 5)
for size in (1, 2, 3, 4, 5):
    print(f"size {size}: {minimal_good(p, size=size)}")
