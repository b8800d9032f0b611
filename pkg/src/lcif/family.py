"""Uniform set families: predicates, compression, materialization from
generators, and brute-force counting used to check the fast counts."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .setcore import (
    Params,
    RSet,
    compress_set,
    generates,
    rset,
    to_mask,
)

ORACLE_LIMIT = 10**7


@dataclass(frozen=True)
class Family:
    members: frozenset[RSet]
    n: int
    r: int

    def __post_init__(self):
        for a in self.members:
            if len(a) != self.r:
                raise ValueError(f"{a} does not have size {self.r}")
            if a[-1] > self.n or a[0] < 1:
                raise ValueError(f"{a} not inside [1, {self.n}]")
            if any(y <= x for x, y in zip(a, a[1:])):
                raise ValueError(f"{a} is not strictly increasing")

    @classmethod
    def of(cls, sets: Iterable[Iterable[int]], n: int, r: int) -> "Family":
        return cls(frozenset(rset(a, n) for a in sets), n, r)

    def __len__(self):
        return len(self.members)

    def __iter__(self) -> Iterator[RSet]:
        return iter(sorted(self.members))

    def __contains__(self, a) -> bool:
        return tuple(a) in self.members

    def masks(self) -> list[int]:
        return [to_mask(a) for a in sorted(self.members)]

    def with_members(self, members: Iterable[RSet]) -> "Family":
        return Family(frozenset(members), self.n, self.r)


def all_rsets(n: int, r: int) -> Iterator[RSet]:
    return combinations(range(1, n + 1), r)


def star(p: Params) -> Family:
    return Family(frozenset(a for a in all_rsets(p.n, p.r) if a[0] == 1), p.n, p.r)


def is_intersecting(f: Family) -> bool:
    ms = f.masks()
    for k, x in enumerate(ms):
        for y in ms[k + 1:]:
            if not x & y:
                return False
    return True


def is_left_compressed(f: Family) -> bool:
    for a in f.members:
        present = set(a)
        for j in a:
            for i in range(1, j):
                if i not in present and compress_set(a, i, j) not in f.members:
                    return False
    return True


def compress_family(f: Family, i: int, j: int) -> Family:
    """The ij-compression of a family: move each member down unless its
    image is already present."""
    if not (1 <= i < j <= f.n):
        raise ValueError(f"need 1 <= i < j <= {f.n}, got i={i}, j={j}")
    out = set()
    for a in f.members:
        c = compress_set(a, i, j)
        out.add(a if c in f.members else c)
    return f.with_members(out)


def potential(f: Family) -> int:
    return sum(sum(a) for a in f.members)


def compression_steps(f: Family) -> Iterator[Family]:
    """Yield ``f`` and then each family produced by a successful
    compression, sweeping pairs in lexicographic order and restarting after
    every change, until a left-compressed family is reached."""
    yield f
    changed = True
    while changed:
        changed = False
        for i in range(1, f.n):
            for j in range(i + 1, f.n + 1):
                g = compress_family(f, i, j)
                if g.members != f.members:
                    f = g
                    changed = True
                    yield f
                    break
            if changed:
                break


def fully_compress(f: Family) -> Family:
    last = f
    for last in compression_steps(f):
        pass
    return last


def is_maximal_intersecting(f: Family) -> bool:
    if not is_intersecting(f):
        raise ValueError("family is not intersecting")
    ms = f.masks()
    for a in all_rsets(f.n, f.r):
        if a in f.members:
            continue
        x = to_mask(a)
        if all(x & y for y in ms):
            return False
    return True


def _gens(gens) -> list[RSet]:
    return [tuple(g) for g in gens]


def materialize(gens, p: Params) -> Family:
    """All r-subsets of [n] generated by some generator in ``gens``."""
    p.require_wide()
    gs = _gens(gens)
    if any(g[-1] > 2 * p.r or len(g) > p.r for g in gs):
        raise ValueError(f"generators must be subsets of [1, {2 * p.r}] of size <= {p.r}")
    members = frozenset(a for a in all_rsets(p.n, p.r) if any(generates(g, a) for g in gs))
    return Family(members, p.n, p.r)


def _check_oracle_size(p: Params) -> None:
    if comb(p.n, p.r) > ORACLE_LIMIT:
        raise ValueError(f"binom({p.n}, {p.r}) exceeds the oracle limit {ORACLE_LIMIT}")


def oracle_count(gens, p: Params, x: Iterable[int]) -> int:
    """Count members of the generated family meeting ``x`` by listing every
    r-subset of [n]."""
    xs = rset(x, p.n)
    if xs[0] == 1:
        raise ValueError("X must not contain 1")
    _check_oracle_size(p)
    p.require_wide()
    gs = _gens(gens)
    xm = to_mask(xs)
    total = 0
    for a in all_rsets(p.n, p.r):
        if to_mask(a) & xm and any(generates(g, a) for g in gs):
            total += 1
    return total


def first_disjoint(a: RSet, n: int) -> RSet:
    """The shift-least r-set disjoint from ``a``: the r smallest elements of
    [n] outside ``a``. Every r-set disjoint from ``a`` lies above it."""
    s = set(a)
    out = []
    for x in range(1, n + 1):
        if x not in s:
            out.append(x)
            if len(out) == len(a):
                return tuple(out)
    raise ValueError(f"no {len(a)}-set in [1, {n}] is disjoint from {a}")


def maximal_lcifs(p: Params) -> list[Family]:
    """Every maximal left-compressed intersecting family in [n]^(r), found by
    direct search over all r-subsets of [n].

    Each r-set is a boolean variable. The three requirements are all binary
    clauses: down-closure under the shift order (A in => each lower cover in),
    intersection (disjoint A, B not both in) and maximality (A out =>
    first_disjoint(A) in). Search branches on variables in lexicographic
    order with full propagation along the implication graph.
    """
    p.require_wide()
    _check_oracle_size(p)
    sets = list(all_rsets(p.n, p.r))
    index = {a: k for k, a in enumerate(sets)}
    masks = [to_mask(a) for a in sets]
    nv = len(sets)
    # literal 2v means "v in", 2v + 1 means "v out"
    edges: list[list[int]] = [[] for _ in range(2 * nv)]

    def clause(u: int, w: int) -> None:
        # u or w
        edges[u ^ 1].append(w)
        edges[w ^ 1].append(u)

    for v, a in enumerate(sets):
        present = set(a)
        for k, x in enumerate(a):
            if x > 1 and x - 1 not in present:
                lower = a[:k] + (x - 1,) + a[k + 1:]
                clause(2 * v + 1, 2 * index[lower])
        for w in range(v + 1, nv):
            if not masks[v] & masks[w]:
                clause(2 * v + 1, 2 * w + 1)
        clause(2 * v, 2 * index[first_disjoint(a, p.n)])

    closure_in = [0] * (2 * nv)
    closure_out = [0] * (2 * nv)
    for lit in range(2 * nv):
        seen = {lit}
        stack = [lit]
        while stack:
            u = stack.pop()
            for w in edges[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        for w in seen:
            if w & 1:
                closure_out[lit] |= 1 << (w >> 1)
            else:
                closure_in[lit] |= 1 << (w >> 1)

    found: list[int] = []
    full = (1 << nv) - 1

    def search(on: int, off: int) -> None:
        free = full & ~(on | off)
        if not free:
            found.append(on)
            return
        v = (free & -free).bit_length() - 1
        for lit in (2 * v, 2 * v + 1):
            new_on = on | closure_in[lit]
            new_off = off | closure_out[lit]
            if not new_on & new_off:
                search(new_on, new_off)

    search(0, 0)
    out = []
    for on in found:
        members = frozenset(sets[v] for v in range(nv) if on >> v & 1)
        out.append(Family(members, p.n, p.r))
    return out
