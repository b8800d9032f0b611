"""Exact counts of the members of a generated family that meet a set X.

A member of the family generated inside [2r] splits into its part inside
[2r] (which decides membership) and free elements from [2r+1, n]. Elements
beyond 2r are interchangeable, so a hitting set X only matters through
``X ∩ [2, 2r]`` and the number ``m`` of its elements above 2r. That pair is
an :class:`XSet`.

With ``t = n - 2r``, ``g_i`` the number of generated i-subsets of [2r] and
``h_i`` those meeting ``X.inside``::

    |A(X)| = sum_i  h_i C(t, r-i) + (g_i - h_i) (C(t, r-i) - C(t-m, r-i))
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, factorial
from typing import Iterable, Sequence

import numpy as np

from .setcore import Params, RSet, generates, to_mask

_INT64_SAFE = 2**62


def binom(a: int, b: int) -> int:
    """C(a, b), taken as 0 when b < 0 or a < b."""
    if b < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class XSet:
    """A hitting set reduced to its elements in [2, 2r] plus a count of
    elements above 2r."""

    inside: tuple[int, ...]
    m: int = 0

    def __post_init__(self):
        inside = tuple(sorted(set(self.inside)))
        object.__setattr__(self, "inside", inside)
        if self.m < 0:
            raise ValueError(f"outside count must be >= 0, got {self.m}")
        if not inside and self.m == 0:
            raise ValueError("X must be nonempty")
        if inside and inside[0] < 2:
            raise ValueError("X must not contain 1")

    @classmethod
    def from_elements(cls, elements: Iterable[int], r: int) -> "XSet":
        xs = sorted(set(elements))
        if not xs:
            raise ValueError("X must be nonempty")
        if xs[0] < 2:
            raise ValueError("X must not contain 1")
        inside = tuple(x for x in xs if x <= 2 * r)
        return cls(inside, len(xs) - len(inside))

    @property
    def size(self) -> int:
        return len(self.inside) + self.m

    @property
    def mask(self) -> int:
        return to_mask(self.inside)

    def check(self, r: int, n: int | None = None) -> None:
        if self.inside and self.inside[-1] > 2 * r:
            raise ValueError(f"X.inside {self.inside} leaves [2, {2 * r}]")
        if n is not None and self.m > n - 2 * r:
            raise ValueError(f"m={self.m} outside elements do not fit when n={n}, r={r}")

    def elements(self, r: int) -> tuple[int, ...]:
        """A representative X: outside elements placed at 2r+1, ..., 2r+m."""
        return self.inside + tuple(range(2 * r + 1, 2 * r + 1 + self.m))

    def __str__(self):
        inside = ",".join(map(str, self.inside))
        return f"inside={inside}; m={self.m}"


@dataclass(frozen=True)
class CountVector:
    """``g[i-1]``, ``h[i-1]`` for i = 1..r."""

    g: tuple[int, ...]
    h: tuple[int, ...]


def _subsets(r: int, i: int):
    return combinations(range(1, 2 * r + 1), i)


def count_vector(gens, x: XSet, r: int) -> CountVector:
    x.check(r)
    gs = [tuple(g) for g in gens]
    xm = x.mask
    g_out, h_out = [], []
    for i in range(1, r + 1):
        g_i = h_i = 0
        for a in _subsets(r, i):
            if any(generates(g, a) for g in gs):
                g_i += 1
                if to_mask(a) & xm:
                    h_i += 1
        g_out.append(g_i)
        h_out.append(h_i)
    return CountVector(tuple(g_out), tuple(h_out))


def count_from_vector(cv: CountVector, x: XSet, p: Params) -> int:
    p.require_wide()
    x.check(p.r, p.n)
    r, t, m = p.r, p.n - 2 * p.r, x.m
    total = 0
    for i in range(1, r + 1):
        g, h = cv.g[i - 1], cv.h[i - 1]
        full = binom(t, r - i)
        total += h * full + (g - h) * (full - binom(t - m, r - i))
    return total


def eval_count(gens, x: XSet, p: Params) -> int:
    """Number of members of the generated family in [n]^(r) meeting X."""
    p.require_wide()
    x.check(p.r, p.n)
    return count_from_vector(count_vector(gens, x, p.r), x, p)


def family_size(gens, p: Params) -> int:
    p.require_wide()
    cv = count_vector(gens, XSet((), 1), p.r)
    t = p.n - 2 * p.r
    return sum(g * binom(t, p.r - i) for i, g in enumerate(cv.g, start=1))


def star_count(x: XSet, p: Params) -> int:
    return eval_count([(1,)], x, p)


def star_count_closed(x: XSet, p: Params) -> int:
    return binom(p.n - 1, p.r - 1) - binom(p.n - 1 - x.size, p.r - 1)


# -- polynomials in t = n - 2r, integer coefficients, lowest degree first --

def _poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _binom_poly(k: int, shift: int, scale: int, length: int) -> list[int]:
    """``scale * C(t - shift, k)`` as coefficients in t, padded to
    ``length``. ``scale`` must be divisible by k!."""
    poly = [scale // factorial(k)]
    for j in range(k):
        poly = _poly_mul(poly, [-(shift + j), 1])
    return poly + [0] * (length - len(poly))


def _bases(r: int, m: int) -> tuple[list[list[int]], list[list[int]]]:
    """Rows i = 1..r of scaled C(t, r-i) and C(t-m, r-i)."""
    scale = factorial(r - 1)
    full = [_binom_poly(r - i, 0, scale, r) for i in range(1, r + 1)]
    cut = [_binom_poly(r - i, m, scale, r) for i in range(1, r + 1)]
    return full, cut


@dataclass(frozen=True)
class CountPoly:
    """``scale`` times a count difference, as a polynomial in t = n - 2r.

    Valid at integers ``t >= m``, where ``m`` is the outside count of the X
    it was built for.
    """

    coeffs: tuple[int, ...]
    scale: int
    r: int
    m: int = 0

    def scaled(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def at_n(self, n: int) -> int:
        v = self.scaled(n - 2 * self.r)
        q, rem = divmod(v, self.scale)
        if rem:
            raise ArithmeticError(f"scaled value {v} not divisible by {self.scale}")
        return q

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def diff_poly(gens, x: XSet, r: int) -> CountPoly:
    """star_count - eval_count(gens) as an exact polynomial in n - 2r."""
    star = count_vector([(1,)], x, r)
    fam = count_vector(gens, x, r)
    full, cut = _bases(r, x.m)
    coeffs = [0] * r
    for i in range(r):
        dg = star.g[i] - fam.g[i]
        dfree = (star.g[i] - star.h[i]) - (fam.g[i] - fam.h[i])
        for k in range(r):
            coeffs[k] += dg * full[i][k] - dfree * cut[i][k]
    return CountPoly(tuple(coeffs), factorial(r - 1), r, x.m)


@dataclass(frozen=True)
class AlwaysNonneg:
    pass


@dataclass(frozen=True)
class NonnegFrom:
    n: int


@dataclass(frozen=True)
class EventuallyNegative:
    n: int


Sign = AlwaysNonneg | NonnegFrom | EventuallyNegative


def _horner(cs: Sequence[int], t: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = acc * t + c
    return acc


def dominance_point(cs: Sequence[int]) -> int:
    """Least integer T >= 1 with |lead| T^d > sum_k |c_k| T^k over k < d.

    From T on the leading term outweighs the rest, so the sign of the
    polynomial is the sign of its leading coefficient. The condition is
    monotone in T and holds at the Cauchy bound 1 + max|c_k| / |lead|,
    which caps the binary search.
    """
    lead = abs(cs[-1])
    rest = [abs(c) for c in cs[:-1]]
    if not any(rest):
        return 1

    def dominates(t):
        return lead * t ** (len(cs) - 1) > _horner(rest, t)

    lo, hi = 1, 1 + -(-max(rest) // lead)
    while lo < hi:
        mid = (lo + hi) // 2
        if dominates(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _sign_of_coeffs(coeffs: Sequence[int], start: int) -> tuple[str, int]:
    """('nonneg', -1), ('from', t) or ('neg', t) over integers t >= start."""
    cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    if not cs:
        return "nonneg", -1
    top = max(dominance_point(cs), start)
    if cs[-1] < 0:
        t = start
        while _horner(cs, t) >= 0:
            t += 1
        return "neg", t
    last_neg = -1
    for t in range(start, top + 1):
        if _horner(cs, t) < 0:
            last_neg = t
    if last_neg < 0:
        return "nonneg", -1
    return "from", last_neg + 1


def sign_threshold(p: CountPoly) -> Sign:
    """Sign of ``p`` over every valid n (n >= 2r + m), exactly."""
    kind, t = _sign_of_coeffs(p.coeffs, p.m)
    if kind == "nonneg":
        return AlwaysNonneg()
    if kind == "from":
        return NonnegFrom(2 * p.r + t)
    return EventuallyNegative(2 * p.r + t)


class CountTable:
    """Count vectors of many generator antichains at once.

    ``member[k, s]`` records whether entry k generates the s-th subset of
    [2r] (sizes 1..r, grouped by size). Hit counts for a batch of X masks
    are one matrix product.
    """

    def __init__(self, entries: Sequence, r: int):
        self.r = r
        self.entries = list(entries)
        subsets: list[RSet] = [a for i in range(1, r + 1) for a in _subsets(r, i)]
        self.subset_masks = np.array([to_mask(a) for a in subsets], dtype=np.int64)
        self.level = np.array([len(a) for a in subsets], dtype=np.int64)
        pos = {a: s for s, a in enumerate(subsets)}

        # rel[s_gen, s]: subset s is generated by subset s_gen
        rel = np.zeros((len(subsets), len(subsets)), dtype=bool)
        arrays = {i: np.array([a for a in subsets if len(a) == i], dtype=np.int64)
                  for i in range(1, r + 1)}
        offsets = {i: int(np.argmax(self.level == i)) for i in range(1, r + 1)}
        for glen in range(1, r + 1):
            gs = arrays[glen]
            for i in range(glen, r + 1):
                sub = arrays[i][:, :glen]
                ok = (sub[None, :, :] <= gs[:, None, :]).all(axis=2)
                rel[offsets[glen]:offsets[glen] + len(gs),
                    offsets[i]:offsets[i] + len(sub)] = ok

        member = np.zeros((len(self.entries), len(subsets)), dtype=bool)
        for k, entry in enumerate(self.entries):
            rows = [pos[tuple(g)] for g in entry]
            member[k] = rel[rows].any(axis=0)
        self.member = member
        self._member_f = member.astype(np.float32)
        onehot = np.zeros((len(subsets), r), dtype=np.float32)
        onehot[np.arange(len(subsets)), self.level - 1] = 1
        self._onehot = onehot
        self.g = member.astype(np.int64) @ onehot.astype(np.int64)

    def hits(self, xmasks: Sequence[int]) -> np.ndarray:
        """h counts, shape (len(xmasks), entries, r)."""
        xm = np.asarray(xmasks, dtype=np.int64)
        hit = (self.subset_masks[:, None] & xm[None, :]) != 0  # S x X
        # S x (X*r): column (x, i) selects hitting subsets of size i
        cols = (hit[:, :, None] * self._onehot[:, None, :]).reshape(len(self.subset_masks), -1)
        out = self._member_f @ cols  # exact: sums stay far below 2**24
        return np.rint(out).astype(np.int64).reshape(len(self.entries), len(xm), self.r).transpose(1, 0, 2)

    def count_vectors(self, x: XSet) -> list[CountVector]:
        h = self.hits([x.mask])[0]
        return [CountVector(tuple(int(v) for v in gr), tuple(int(v) for v in hr))
                for gr, hr in zip(self.g, h)]


def weights(r: int, t: int, m: int) -> tuple[list[int], list[int]]:
    """C(t, r-i) and C(t-m, r-i) for i = 1..r."""
    return ([binom(t, r - i) for i in range(1, r + 1)],
            [binom(t - m, r - i) for i in range(1, r + 1)])


def diff_values(g: np.ndarray, h: np.ndarray, star: int, r: int, n: int, m: int) -> np.ndarray:
    """star_count - family count for every row of (g, h), exactly.

    ``g`` and ``h`` have shape (K, r); ``star`` is the row index of the
    star. Uses int64 when the result provably fits, Python ints otherwise.
    """
    full, cut = weights(r, n - 2 * r, m)
    dg = g[star] - g
    dfree = (g[star] - h[star]) - (g - h)
    bound = (int(np.abs(dg).max(initial=0)) * sum(full)
             + int(np.abs(dfree).max(initial=0)) * sum(cut))
    if bound < _INT64_SAFE:
        return dg @ np.array(full, dtype=np.int64) - dfree @ np.array(cut, dtype=np.int64)
    return dg.astype(object) @ np.array(full, dtype=object) - dfree.astype(object) @ np.array(cut, dtype=object)


def poly_bases(r: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Scaled C(t, r-i) and C(t-m, r-i) coefficient rows as arrays, int64
    when small enough for exact products with count differences."""
    full, cut = _bases(r, m)
    mag = max(abs(c) for row in full + cut for c in row)
    dtype = np.int64 if mag * (2 ** (2 * r + 1)) * r < _INT64_SAFE else object
    return np.array(full, dtype=dtype), np.array(cut, dtype=dtype)


def diff_coeffs(g: np.ndarray, h: np.ndarray, star: int, r: int, m: int) -> np.ndarray:
    """Scaled polynomial coefficients of star - family per row, as objects."""
    full, cut = _bases(r, m)
    dg = (g[star] - g).astype(object)
    dfree = ((g[star] - h[star]) - (g - h)).astype(object)
    return dg @ np.array(full, dtype=object) - dfree @ np.array(cut, dtype=object)


def sign_thresholds(coeffs: np.ndarray, start: int, horizon: int = 64) -> tuple[np.ndarray, np.ndarray]:
    """Batched form of the sign analysis behind :func:`sign_threshold`.

    ``coeffs`` has one polynomial per row (scaled, in t, lowest degree
    first). Returns ``kind`` (0 always nonnegative, 1 nonnegative from
    ``t``, 2 negative at ``t`` and for all large t) and ``t``. Rows whose
    dominance point lies beyond ``start + horizon`` take the scalar path.
    """
    rows = len(coeffs)
    kind = np.zeros(rows, dtype=np.int64)
    tval = np.full(rows, -1, dtype=np.int64)
    if rows == 0:
        return kind, tval
    c = np.asarray(coeffs)
    if c.dtype == object:
        mag = max(abs(int(v)) for v in c.ravel())
    else:
        mag = int(np.abs(c).max())
    deg_cap = c.shape[1] - 1
    if mag * (start + horizon + 1) ** max(deg_cap, 1) * (deg_cap + 1) >= _INT64_SAFE:
        for k in range(rows):
            kd, t = _sign_of_coeffs([int(v) for v in c[k]], start)
            kind[k], tval[k] = {"nonneg": 0, "from": 1, "neg": 2}[kd], t
        return kind, tval
    c = np.asarray(c, dtype=np.int64)
    nonzero = c != 0
    has = nonzero.any(axis=1)
    deg = np.where(has, c.shape[1] - 1 - np.argmax(nonzero[:, ::-1], axis=1), 0)
    lead = c[np.arange(rows), deg]
    trivial = ~has | (c >= 0).all(axis=1)
    grid = np.arange(start, start + horizon + 1, dtype=np.int64)
    grid1 = np.maximum(grid, 1)
    absc = np.abs(c)
    absc[np.arange(rows), deg] = 0
    major = np.zeros((rows, len(grid)), dtype=np.int64)
    for k in range(c.shape[1] - 1, -1, -1):
        major = major * grid1[None, :] + absc[:, k:k + 1]
    lead_term = np.abs(lead)[:, None] * grid1[None, :] ** deg[:, None]
    dom = lead_term > major
    # the condition is monotone in t, so its first hit on the grid is the
    # dominance point whenever that point is >= start
    reached = dom.any(axis=1)
    first = grid1[np.argmax(dom, axis=1)]
    top = np.maximum(first, start)
    fast = ~trivial & reached
    slow = np.flatnonzero(~trivial & ~fast)

    idx = np.flatnonzero(fast)
    if len(idx):
        cc = c[idx]
        vals = np.zeros((len(idx), len(grid)), dtype=np.int64)
        for k in range(c.shape[1] - 1, -1, -1):
            vals = vals * grid[None, :] + cc[:, k:k + 1]
        neg = vals < 0
        in_range = grid[None, :] <= top[idx, None]
        neg_lead = lead[idx] < 0
        first_neg = np.argmax(neg, axis=1)
        kind[idx[neg_lead]] = 2
        tval[idx[neg_lead]] = grid[first_neg[neg_lead]]
        pos_idx = ~neg_lead
        neg_in = neg & in_range
        any_neg = neg_in.any(axis=1)
        last_neg = len(grid) - 1 - np.argmax(neg_in[:, ::-1], axis=1)
        sel = pos_idx & any_neg
        kind[idx[sel]] = 1
        tval[idx[sel]] = grid[last_neg[sel]] + 1
    for k in slow:
        kd, t = _sign_of_coeffs([int(v) for v in c[k]], start)
        kind[k], tval[k] = {"nonneg": 0, "from": 1, "neg": 2}[kd], t
    return kind, tval


def unique_rows(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows of an integer matrix and the index of each original
    row among them."""
    if len(a) == 0:
        return a, np.zeros(0, dtype=np.int64)
    order = np.lexsort(a.T[::-1])
    ordered = a[order]
    new = np.ones(len(a), dtype=bool)
    new[1:] = (ordered[1:] != ordered[:-1]).any(axis=1)
    group = np.cumsum(new) - 1
    inverse = np.empty(len(a), dtype=np.int64)
    inverse[order] = group
    return ordered[new], inverse
