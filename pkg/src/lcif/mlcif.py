"""Maximal left-compressed intersecting families of r-subsets of [2r], their
generator antichains, and the on-disk catalog."""
from __future__ import annotations

import functools
import logging
import os
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .family import (
    Family,
    is_intersecting,
    is_left_compressed,
    is_maximal_intersecting,
    materialize,
)
from .setcore import Params, RSet, format_set, generates, parse_set

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
MAX_R = 6


class CatalogError(ValueError):
    pass


def _gen_key(g: RSet):
    return (len(g), g)


@dataclass(frozen=True)
class GenAntichain:
    """Generators of one maximal left-compressed intersecting family.

    Stored sorted by (length, elements). Construction rejects a list where
    one generator generates another or two generators are disjoint.
    """

    generators: tuple[RSet, ...]

    def __post_init__(self):
        gens = tuple(sorted({tuple(g) for g in self.generators}, key=_gen_key))
        if not gens:
            raise ValueError("empty generator list")
        for g in gens:
            if any(y <= x for x, y in zip(g, g[1:])) or g[0] < 1:
                raise ValueError(f"generator {g} is not a strictly increasing positive sequence")
        for a, b in combinations(gens, 2):
            if generates(a, b) or generates(b, a):
                raise ValueError(f"generators {format_set(a)} and {format_set(b)} are comparable")
            if not set(a) & set(b):
                raise ValueError(f"generators {format_set(a)} and {format_set(b)} are disjoint")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *gens) -> "GenAntichain":
        return cls(tuple(tuple(g) for g in gens))

    @classmethod
    def parse(cls, text: str) -> "GenAntichain":
        return cls(tuple(parse_set(tok) for tok in text.split("|")))

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def __str__(self):
        return "|".join(format_set(g) for g in self.generators)

    def pretty(self) -> str:
        return ", ".join("{" + format_set(g) + "}" for g in self.generators)

    @property
    def sort_key(self):
        return (len(self.generators), self.generators)

    def fits(self, r: int) -> bool:
        return all(len(g) <= r and g[-1] <= 2 * r for g in self.generators)


def star_gens() -> GenAntichain:
    return GenAntichain(((1,),))


def hilton_milner_gens(r: int) -> GenAntichain:
    """{1(r+1), [2, r+1]}; for r = 2 the first generates nothing new and
    {23} alone remains."""
    if r == 2:
        return GenAntichain(((2, 3),))
    return GenAntichain(((1, r + 1), tuple(range(2, r + 2))))


@dataclass(frozen=True)
class Catalog:
    r: int
    entries: tuple[GenAntichain, ...]
    sizes: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not self.sizes:
            object.__setattr__(self, "sizes", tuple(_size_2r(e, self.r) for e in self.entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def index(self, entry: GenAntichain) -> int:
        return self.entries.index(entry)

    def validate(self) -> None:
        """Raise CatalogError naming the first broken invariant."""
        r = self.r
        if r < 2:
            raise CatalogError(f"r must be >= 2, got {r}")
        if len(self.sizes) != len(self.entries):
            raise CatalogError("sizes and entries differ in length")
        if len(set(self.entries)) != len(self.entries):
            dup = next(e for e in self.entries if self.entries.count(e) > 1)
            raise CatalogError(f"duplicate entry {dup}")
        for e, size in zip(self.entries, self.sizes):
            if not e.fits(r):
                raise CatalogError(f"entry {e} has a generator outside [1, {2 * r}] or longer than {r}")
            if size != _size_2r(e, r):
                raise CatalogError(f"entry {e} records size {size}, expected {_size_2r(e, r)}")
        if list(self.entries) != sorted(self.entries, key=lambda e: e.sort_key):
            raise CatalogError("entries are not in canonical order")
        for needed in (star_gens(), hilton_milner_gens(r)):
            if needed not in self.entries:
                raise CatalogError(f"missing required entry {needed}")


def _size_2r(entry: GenAntichain, r: int) -> int:
    # at n = 2r only full-length r-sets count
    return sum(1 for a in combinations(range(1, 2 * r + 1), r)
               if any(generates(g, a) for g in entry))


def enumerate_mlcif(r: int, override: bool = False) -> Catalog:
    """All maximal left-compressed intersecting families in [2r]^(r).

    At n = 2r two r-sets are disjoint exactly when they are complements, so
    these families are the down-sets of the shift order holding exactly one
    set from each complementary pair. The search walks the pairs in
    lexicographic order and chooses a side; choosing A forces everything
    below A in and the complements of those out.
    """
    if r < 2:
        raise ValueError(f"r must be >= 2, got {r}")
    if r > MAX_R and not override:
        raise ValueError(f"r={r} exceeds {MAX_R}; pass override to enumerate anyway")
    n = 2 * r
    sets = list(combinations(range(1, n + 1), r))
    index = {a: k for k, a in enumerate(sets)}
    full = frozenset(range(1, n + 1))
    comp = [index[tuple(sorted(full - set(a)))] for a in sets]

    # below[k]: bitmask of sets <= sets[k]; built in lexicographic order,
    # which is a linear extension of the shift order
    below = [0] * len(sets)
    for k, a in enumerate(sets):
        mask = 1 << k
        present = set(a)
        for pos, x in enumerate(a):
            if x > 1 and x - 1 not in present:
                mask |= below[index[a[:pos] + (x - 1,) + a[pos + 1:]]]
        below[k] = mask
    below_comp = []
    for mask in below:
        cm = 0
        while mask:
            low = mask & -mask
            cm |= 1 << comp[low.bit_length() - 1]
            mask ^= low
        below_comp.append(cm)

    # above[k]: upper covers of sets[k]; trunc[k]: sets[k] cut after its
    # last position s with a_s < r + s
    above = [0] * len(sets)
    for k, a in enumerate(sets):
        present = set(a)
        for pos, x in enumerate(a):
            if x < n and x + 1 not in present:
                above[k] |= 1 << index[a[:pos] + (x + 1,) + a[pos + 1:]]
    trunc = [_truncate(a, r) if a[0] <= r else None for a in sets]

    pairs = [k for k, a in enumerate(sets) if a[0] == 1]
    results: list[int] = []

    def search(on: int, off: int, start: int) -> None:
        decided = on | off
        while start < len(pairs) and decided >> pairs[start] & 1:
            start += 1
        if start == len(pairs):
            results.append(on)
            return
        k = pairs[start]
        for side in (k, comp[k]):
            new_on = on | below[side]
            new_off = off | below_comp[side]
            if not new_on & new_off:
                search(new_on, new_off, start + 1)

    search(0, 0, 0)
    log.debug("r=%d: %d maximal families", r, len(results))

    entries = []
    for on in results:
        tops = []
        rest = on
        while rest:
            low = rest & -rest
            k = low.bit_length() - 1
            if not on & above[k]:
                tops.append(trunc[k])
            rest ^= low
        entries.append(GenAntichain(tuple(tops)))
    entries.sort(key=lambda e: e.sort_key)
    size = len(sets) // 2
    return Catalog(r, tuple(entries), tuple(size for _ in entries))


def _truncate(a: RSet, r: int) -> RSet:
    # greatest s (1-based) with a_s < r + s; exists unless a = [r+1, 2r]
    s = max(k + 1 for k, x in enumerate(a) if x < r + k + 1)
    return a[:s]


def _extract(f: Family) -> GenAntichain:
    n = f.n
    truncated = set()
    for a in f.members:
        present = set(a)
        top = True
        for pos, x in enumerate(a):
            if x < n and x + 1 not in present:
                if a[:pos] + (x + 1,) + a[pos + 1:] in f.members:
                    top = False
                    break
        if top:
            truncated.add(_truncate(a, f.r))
    keep = [g for g in truncated
            if not any(h != g and generates(h, g) for h in truncated)]
    return GenAntichain(tuple(keep))


def extract_generators(f: Family) -> GenAntichain:
    """Generators of a maximal left-compressed intersecting family in
    [2r]^(r): each shift-maximal member cut after its last position s with
    a_s < r + s."""
    if f.n != 2 * f.r:
        raise ValueError(f"need n = 2r, got n={f.n}, r={f.r}")
    if not is_left_compressed(f):
        raise ValueError("family is not left-compressed")
    if not is_intersecting(f) or not is_maximal_intersecting(f):
        raise ValueError("family is not maximal intersecting")
    return _extract(f)


def unique_extension_check(entry: GenAntichain, r: int, n: int) -> bool:
    p = Params(n, r)
    big = materialize(entry, p)
    small = materialize(entry, Params(2 * r, r))
    if not (is_intersecting(big) and is_left_compressed(big) and is_maximal_intersecting(big)):
        return False
    restricted = frozenset(a for a in big.members if a[-1] <= 2 * r)
    return restricted == small.members


def format_catalog(cat: Catalog) -> str:
    lines = [f"mlcif-catalog v{FORMAT_VERSION} r={cat.r} count={len(cat)}"]
    for e, size in zip(cat.entries, cat.sizes):
        lines.append(f"r={cat.r}; gens={e}; size2r={size}")
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> Catalog:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CatalogError("empty catalog file")
    head = lines[0].split()
    try:
        if head[0] != "mlcif-catalog":
            raise CatalogError(f"bad header {lines[0]!r}")
        if head[1] != f"v{FORMAT_VERSION}":
            raise CatalogError(f"unsupported version {head[1]}")
        r = int(head[2].removeprefix("r="))
        count = int(head[3].removeprefix("count="))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, CatalogError):
            raise
        raise CatalogError(f"bad header {lines[0]!r}") from None
    entries, sizes = [], []
    for ln in lines[1:]:
        fields = dict(part.strip().split("=", 1) for part in ln.split(";"))
        try:
            if int(fields["r"]) != r:
                raise CatalogError(f"record r differs from header: {ln!r}")
            entry = GenAntichain.parse(fields["gens"])
            size = int(fields["size2r"])
        except KeyError as exc:
            raise CatalogError(f"record missing field {exc}: {ln!r}") from None
        except ValueError as exc:
            if isinstance(exc, CatalogError):
                raise
            raise CatalogError(f"invalid record {ln!r}: {exc}") from None
        entries.append(entry)
        sizes.append(size)
    if len(entries) != count:
        raise CatalogError(f"header count {count} but {len(entries)} records")
    cat = Catalog(r, tuple(entries), tuple(sizes))
    cat.validate()
    return cat


def save_catalog(cat: Catalog, path) -> None:
    Path(path).write_text(format_catalog(cat), encoding="utf-8")


def load_catalog(path, r: int | None = None) -> Catalog:
    cat = parse_catalog(Path(path).read_text(encoding="utf-8"))
    if r is not None and cat.r != r:
        raise CatalogError(f"catalog is for r={cat.r}, wanted r={r}")
    return cat


def cache_path(cache_dir, r: int) -> Path:
    return Path(cache_dir) / f"mlcif-r{r}-v{FORMAT_VERSION}.txt"


def cached_catalog(r: int, cache_dir=None, override: bool = False) -> Catalog:
    """Load the catalog for ``r`` from ``cache_dir``, computing and storing it
    on a miss or when the stored file is unreadable."""
    if cache_dir is None:
        return catalog(r, override)
    path = cache_path(cache_dir, r)
    if path.exists():
        try:
            return load_catalog(path, r)
        except CatalogError as exc:
            log.warning("ignoring cached catalog %s: %s", path, exc)
    cat = catalog(r, override)
    os.makedirs(path.parent, exist_ok=True)
    save_catalog(cat, path)
    return cat


@functools.lru_cache(maxsize=None)
def catalog(r: int, override: bool = False) -> Catalog:
    return enumerate_mlcif(r, override)
