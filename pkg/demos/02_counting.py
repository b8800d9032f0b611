"""Counting members that meet a hitting set X.

Elements above 2r are interchangeable for a generated family, so X only
matters through X ∩ [2, 2r] and the number m of its elements above 2r.
The count is a polynomial in n, cross-checked here against full
enumeration.
"""
from lcif import GenAntichain, Params, XSet, eval_count, oracle_count

r, n = 3, 10
p = Params(n, r)
raw = (2, 3, 9)
x = XSet.from_elements(raw, r)
print(f"X = {raw} reduces to inside={x.inside}, m={x.m}")
for text in ("1", "2,3", "1,4|2,3,4"):
    gens = GenAntichain.parse(text)
    fast = eval_count(gens, x, p)
    slow = oracle_count(gens, p, raw)
    print(f"  {gens.pretty():18} formula {fast:3}  enumeration {slow:3}")
