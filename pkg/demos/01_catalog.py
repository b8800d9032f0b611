"""Maximal left-compressed intersecting families of [2r]^(r).

Each family is stored by its generator antichain: the shortest prefixes
whose up-closure under the shift order rebuilds it. Every family has
exactly binom(2r-1, r-1) members at n = 2r, one from each complementary
pair of r-sets.
"""
from lcif import Params, catalog, materialize

for r in (2, 3):
    cat = catalog(r)
    print(f"r={r}: {len(cat)} maximal families")
    for entry in cat:
        fam = materialize(entry, Params(2 * r, r))
        print(f"  {entry.pretty():28} {len(fam)} members")

print(f"r=4: {len(catalog(4))} maximal families")
