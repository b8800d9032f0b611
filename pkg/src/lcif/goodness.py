"""Which hitting sets X are good: no left-compressed intersecting family
meets X more often than the star at 1.

Every left-compressed intersecting family sits inside a maximal one and
counts only grow with the family, so it is enough to compare the star with
each catalog entry.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .census import (
    AlwaysNonneg,
    CountTable,
    EventuallyNegative,
    NonnegFrom,
    Sign,
    XSet,
    binom,
    diff_values,
    eval_count,
    poly_bases,
    sign_thresholds,
    star_count,
    unique_rows,
)
from .family import (
    Family,
    all_rsets,
    compress_family,
    compression_steps,
    is_intersecting,
    is_left_compressed,
    materialize,
    maximal_lcifs,
    oracle_count,
    potential,
)
from .mlcif import Catalog, GenAntichain, catalog, hilton_milner_gens, star_gens
from .setcore import Params, leq, to_mask

SEARCH_LIMIT = 2**20
BORG_A = "borg-a"
_CHUNK = 32


@dataclass(frozen=True)
class Witness:
    family: GenAntichain
    family_count: int
    star_count: int


@dataclass(frozen=True)
class Verdict:
    good: bool
    witnesses: tuple[Witness, ...] = ()
    shortcut: str | None = None


@dataclass(frozen=True)
class EventualVerdict:
    eventually_good: bool
    threshold: int | None
    per_family: tuple[tuple[GenAntichain, Sign], ...] = ()
    shortcut: str | None = None


class Classifier:
    """Star-versus-catalog comparisons for one r, batched over many X."""

    def __init__(self, cat: Catalog):
        self.catalog = cat
        self.r = cat.r
        self.table = CountTable(cat.entries, cat.r)
        self.star = cat.index(star_gens())

    def _rows(self, xsets: Sequence[XSet]):
        for lo in range(0, len(xsets), _CHUNK):
            chunk = xsets[lo:lo + _CHUNK]
            hits = self.table.hits([x.mask for x in chunk])
            yield from zip(chunk, hits)

    def diffs(self, x: XSet, n: int) -> np.ndarray:
        """star count minus entry count, per catalog entry, at n."""
        x.check(self.r, n)
        h = self.table.hits([x.mask])[0]
        return diff_values(self.table.g, h, self.star, self.r, n, x.m)

    def good_at(self, xsets: Sequence[XSet], ns: Iterable[int]) -> np.ndarray:
        """Boolean array (len(xsets), len(ns)); False where n < 2r + m."""
        ns = list(ns)
        out = np.zeros((len(xsets), len(ns)), dtype=bool)
        for k, (x, h) in enumerate(self._rows(xsets)):
            for j, n in enumerate(ns):
                if n - 2 * self.r >= x.m:
                    out[k, j] = diff_values(self.table.g, h, self.star, self.r, n, x.m).min() >= 0
        return out

    def eventual(self, xsets: Sequence[XSet]) -> list[tuple[bool, int | None]]:
        """(eventually good, threshold n) per X."""
        out = []
        for x, h in self._rows(xsets):
            kind, tval = self._signs(x, h, unique=True)
            out.append(_threshold(kind, tval, self.r))
        return out

    def coeffs(self, x: XSet, h: np.ndarray | None = None, unique: bool = False):
        """Scaled coefficients in t = n - 2r of star minus entry, one row per
        entry (per distinct row, with the inverse map, when ``unique``)."""
        if h is None:
            h = self.table.hits([x.mask])[0]
        g = self.table.g
        dg = g[self.star] - g
        dfree = (g[self.star] - h[self.star]) - (g - h)
        d = np.hstack([dg, dfree])
        inverse = None
        if unique:
            d, inverse = unique_rows(d)
        full, cut = poly_bases(self.r, x.m)
        return d[:, :self.r] @ full - d[:, self.r:] @ cut, inverse

    def _signs(self, x: XSet, h: np.ndarray, unique: bool):
        coeffs, inverse = self.coeffs(x, h, unique)
        kind, tval = sign_thresholds(coeffs, x.m)
        if unique:
            return kind[inverse], tval[inverse]
        return kind, tval


def _threshold(kind: np.ndarray, tval: np.ndarray, r: int) -> tuple[bool, int | None]:
    if (kind == 2).any():
        return False, None
    worst = int(tval[kind == 1].max()) if (kind == 1).any() else 0
    return True, 2 * r + worst


@functools.lru_cache(maxsize=None)
def classifier(r: int) -> Classifier:
    return Classifier(catalog(r))


def _classifier_for(r: int, cat: Catalog | None) -> Classifier:
    if cat is None:
        return classifier(r)
    if cat.r != r:
        raise ValueError(f"catalog is for r={cat.r}, not r={r}")
    return Classifier(cat)


def _as_xset(x, r: int) -> XSet:
    return x if isinstance(x, XSet) else XSet.from_elements(x, r)


def classify_at(x, p: Params, cat: Catalog | None = None, confirm: bool = False) -> Verdict:
    """Compare the star with every catalog family at (n, r).

    For |X| > r the answer is immediate (always good) unless ``confirm``
    asks for the full comparison.
    """
    p.require_wide()
    x = _as_xset(x, p.r)
    x.check(p.r, p.n)
    if x.size > p.r and not confirm:
        return Verdict(True, (), BORG_A)
    clf = _classifier_for(p.r, cat)
    d = clf.diffs(x, p.n)
    witnesses = []
    if d.min() < 0:
        star = star_count(x, p)
        for k in np.flatnonzero(d < 0):
            witnesses.append(Witness(clf.catalog.entries[k], star - int(d[k]), star))
    shortcut = BORG_A if x.size > p.r else None
    return Verdict(not witnesses, tuple(witnesses), shortcut)


def classify_eventual(x, r: int, cat: Catalog | None = None, confirm: bool = False) -> EventualVerdict:
    """Is X good for all large n, and from which n on.

    The threshold is the least N >= 2r such that X is good at every n >= N
    where X fits (n >= 2r + m).
    """
    x = _as_xset(x, r)
    x.check(r)
    if x.size > r and not confirm:
        return EventualVerdict(True, 2 * r, (), BORG_A)
    clf = _classifier_for(r, cat)
    h = clf.table.hits([x.mask])[0]
    kind, tval = clf._signs(x, h, unique=False)
    per_family = []
    for entry, kd, t in zip(clf.catalog.entries, kind, tval):
        sign = (AlwaysNonneg(), NonnegFrom(2 * r + int(t)), EventuallyNegative(2 * r + int(t)))[kd]
        per_family.append((entry, sign))
    good, threshold = _threshold(kind, tval, r)
    if good and threshold > 2 * r + x.m:
        # exact thresholds: bad just below, good at the threshold
        assert clf.diffs(x, threshold).min() >= 0
        assert clf.diffs(x, threshold - 1).min() < 0
    shortcut = BORG_A if x.size > r else None
    return EventualVerdict(good, threshold, tuple(per_family), shortcut)


def theorem_main_predicate(x, r: int) -> bool:
    """Closed-form eventual goodness for |X| <= r.

    For r = 2 the two-element case reads X != {2, 3}.
    """
    x = _as_xset(x, r)
    if x.size > r:
        raise ValueError(f"|X| = {x.size} > r = {r}: such X are always good")
    if r < 2:
        raise ValueError("need r >= 2")
    inside = set(x.inside)
    if x.m == 0 and all(2 <= e <= r + 1 for e in inside):
        return False
    size = x.size
    if r == 2:
        return size == 1 or inside != {2, 3}
    if size >= 4:
        return True
    if size == 3:
        return not {2, 3} <= inside
    if size == 2:
        return 2 not in inside and 3 not in inside
    return True


def expected_eventual(x: XSet, r: int) -> bool:
    return True if x.size > r else theorem_main_predicate(x, r)


def _subsets_of(lo: int, hi: int, size: int | None):
    span = range(lo, hi + 1)
    sizes = [size] if size is not None else range(1, hi - lo + 2)
    for k in sizes:
        yield from combinations(span, k)


def good_sets(p: Params, size: int | None = None, cat: Catalog | None = None,
              override: bool = False) -> dict[tuple[int, ...], bool]:
    """Goodness of every X in [2, n] (of the given size) at (n, r)."""
    p.require_wide()
    if 2 ** (p.n - 1) > SEARCH_LIMIT and not override:
        raise ValueError(f"2^{p.n - 1} candidate sets exceed the search limit {SEARCH_LIMIT}")
    raw = list(_subsets_of(2, p.n, size))
    reduced = [XSet.from_elements(x, p.r) for x in raw]
    distinct = sorted(set(reduced), key=lambda x: (x.size, x.inside, x.m))
    clf = _classifier_for(p.r, cat)
    small = [x for x in distinct if x.size <= p.r]
    verdict = {x: True for x in distinct if x.size > p.r}
    if small:
        for x, ok in zip(small, clf.good_at(small, [p.n])[:, 0]):
            verdict[x] = bool(ok)
    return {x: verdict[xs] for x, xs in zip(raw, reduced)}


def _lower_covers(x: tuple[int, ...], lo: int = 2):
    present = set(x)
    for k, e in enumerate(x):
        if e - 1 >= lo and e - 1 not in present:
            yield x[:k] + (e - 1,) + x[k + 1:]


def minimal_good(p: Params, size: int | None = None, cat: Catalog | None = None,
                 override: bool = False) -> list[tuple[int, ...]]:
    """Good X in [2, n] with no other good X' of the same size lying below X
    in the shift order."""
    good = good_sets(p, size, cat, override)
    # some_good_below[X]: a good set lies at or below X; filled in an order
    # where every lower cover comes first (sorted by element sum)
    some_good_below: dict[tuple[int, ...], bool] = {}
    for x in sorted(good, key=lambda s: (len(s), sum(s), s)):
        some_good_below[x] = good[x] or any(some_good_below[c] for c in _lower_covers(x))
    out = [x for x in good
           if good[x] and not any(some_good_below[c] for c in _lower_covers(x))]
    return sorted(out, key=lambda s: (len(s), s))


# -- verification suites -----------------------------------------------------

@dataclass
class ClaimResult:
    claim: str
    params: dict
    passed: bool
    counterexample: str | None = None

    def record(self) -> str:
        parts = [f"claim={self.claim}"]
        parts += [f"{k}={v}" for k, v in self.params.items()]
        parts.append(f"status={'pass' if self.passed else 'fail'}")
        if self.counterexample:
            parts.append(f"counterexample={self.counterexample}")
        return "; ".join(parts)

    def human(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        line = f"{'PASS' if self.passed else 'FAIL'}  {self.claim}  {params}"
        if self.counterexample:
            line += f"  counterexample: {self.counterexample}"
        return line


@dataclass
class Report:
    suite: str
    results: list[ClaimResult] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(res.passed for res in self.results)

    def add(self, claim: str, passed: bool, counterexample: str | None = None, **params) -> None:
        self.results.append(ClaimResult(claim, params, bool(passed), counterexample))


def _fmt(x) -> str:
    if isinstance(x, XSet):
        return f"{{{','.join(map(str, x.inside))}}}+{x.m}"
    return "{" + ",".join(map(str, x)) + "}"


def _first(items) -> str | None:
    for item in items:
        return item
    return None


def _suite_borg(report: Report, rs, ns) -> None:
    for r in rs:
        for n in ns(r):
            p = Params(n, r)
            good = good_sets(p)
            bad_a = [x for x, ok in good.items() if len(x) > r and not ok]
            report.add("borg-a", not bad_a, _first(map(_fmt, bad_a)), r=r, n=n)
            bad_b = []
            for x, ok in good.items():
                if not ok:
                    continue
                present = set(x)
                for k, e in enumerate(x):
                    if e + 1 <= n and e + 1 not in present:
                        up = tuple(sorted(x[:k] + (e + 1,) + x[k + 1:]))
                        if not good[up]:
                            bad_b.append(f"{_fmt(x)}<={_fmt(up)}")
            report.add("borg-b", not bad_b, _first(bad_b), r=r, n=n)
            bad_c = [k for k in range(1, r + 1) if not good[tuple(range(2 * k, 2 * r + 1, 2))]]
            report.add("borg-c", not bad_c, _first(f"k={k}" for k in bad_c), r=r, n=n)
            evens = tuple(range(2, 2 * r + 1, 2))
            if n == 2 * r:
                bad_d = [x for x, ok in good.items() if len(x) == r and ok != leq(evens, x)]
                report.add("borg-d", not bad_d, _first(map(_fmt, bad_d)), r=r, n=n)
            else:
                def rule_e(x):
                    if r >= 4:
                        return x != tuple(range(2, r + 2))
                    if r == 3:
                        return not {2, 3} <= set(x)
                    return x != (2, 3)
                bad_e = [x for x, ok in good.items() if len(x) == r and ok != rule_e(x)]
                report.add("borg-e", not bad_e, _first(map(_fmt, bad_e)), r=r, n=n)


def _all_small_xsets(r: int, max_m: int = 0, max_size: int | None = None) -> list[XSet]:
    out = []
    for m in range(max_m + 1):
        for k in range(0, 2 * r):
            for inside in combinations(range(2, 2 * r + 1), k):
                if k + m == 0 or (max_size is not None and k + m > max_size):
                    continue
                out.append(XSet(inside, m))
    return out


def _suite_main(report: Report, rs, ns) -> None:
    for r in rs:
        xsets = _all_small_xsets(r, 0, max_size=r)
        expect = [theorem_main_predicate(x, r) for x in xsets]
        clf = classifier(r)
        for n in ns(r):
            got = clf.good_at(xsets, [n])[:, 0]
            bad = [_fmt(x) for x, e, gd in zip(xsets, expect, got) if e != gd]
            report.add("main-at-n", not bad, _first(bad), r=r, n=n)
        eventual = clf.eventual(xsets)
        bad = [_fmt(x) for x, e, (gd, _) in zip(xsets, expect, eventual) if e != gd]
        report.add("main-eventual", not bad, _first(bad), r=r)


def _suite_thresholds(report: Report, rs, ns, max_m: int = 4) -> None:
    for r in rs:
        xsets = _all_small_xsets(r, max_m)
        expect = [expected_eventual(x, r) for x in xsets]
        clf = classifier(r)
        eventual = clf.eventual(xsets)
        bad = [_fmt(x) for x, e, (gd, _) in zip(xsets, expect, eventual) if e != gd]
        report.add("eventual-matches-theorem", not bad, _first(bad), r=r, max_m=max_m)
        late = [f"{_fmt(x)} N0={t}" for x, (gd, t) in zip(xsets, eventual) if gd and t > 2 * r + 2]
        report.add("threshold-at-most-2r+2", not late, _first(late), r=r, max_m=max_m)
        # bad X: one family beats the star at every valid n >= 2r+2
        early = []
        for x, (gd, _) in zip(xsets, eventual):
            if not gd and not _beaten_from(clf, x, 2):
                early.append(_fmt(x))
        report.add("bad-from-2r+2", not early, _first(early), r=r, max_m=max_m)
        n_list = list(ns(r))
        got = clf.good_at(xsets, n_list)
        bad = []
        for x, e, row in zip(xsets, expect, got):
            for n, gd in zip(n_list, row):
                if n - 2 * r >= x.m and gd != e:
                    bad.append(f"{_fmt(x)} n={n}")
        report.add("direct-matches-theorem", not bad, _first(bad), r=r,
                   n=f"{n_list[0]}..{n_list[-1]}", max_m=max_m)


def _beaten_from(clf: Classifier, x: XSet, t0: int) -> bool:
    """Some entry has strictly more members meeting X than the star for
    every t = n - 2r >= max(t0, m)."""
    coeffs, _ = clf.coeffs(x, unique=True)
    # scaled values are integers, so "< 0" is "-value - 1 >= 0"
    flipped = -np.asarray(coeffs)
    flipped[:, 0] -= 1
    kind, _ = sign_thresholds(flipped, max(t0, x.m))
    return bool((kind == 0).any())


def _suite_ekr(report: Report, rs, ns) -> None:
    for r in rs:
        clf = classifier(r)
        for n in ns(r):
            t = n - 2 * r
            w = np.array([binom(t, r - i) for i in range(1, r + 1)], dtype=object)
            sizes = clf.table.g.astype(object) @ w
            star = binom(n - 1, r - 1)
            over = [str(e) for e, s in zip(clf.catalog.entries, sizes) if s > star]
            report.add("ekr-bound", not over, _first(over), r=r, n=n)
            if n > 2 * r:
                ties = [str(e) for k, (e, s) in enumerate(zip(clf.catalog.entries, sizes))
                        if s == star and k != clf.star]
                report.add("ekr-unique-star", not ties, _first(ties), r=r, n=n)


def hilton_milner_check(r: int, n: int) -> list[str]:
    """X inside [2, r+1] for which the Hilton-Milner family does not beat the
    star by exactly one."""
    hm = hilton_milner_gens(r)
    p = Params(n, r)
    bad = []
    for k in range(1, r + 1):
        for x in combinations(range(2, r + 2), k):
            v = classify_at(x, p, confirm=True)
            hit = [w for w in v.witnesses if w.family == hm]
            if not hit or hit[0].family_count != hit[0].star_count + 1:
                bad.append(_fmt(x))
    return bad


def random_intersecting_family(rng: random.Random, n: int, r: int, tries: int = 40) -> Family:
    """Greedy random intersecting family in [n]^(r)."""
    pool = list(all_rsets(n, r))
    chosen: list[tuple[int, ...]] = []
    masks: list[int] = []
    for _ in range(rng.randint(1, tries)):
        a = rng.choice(pool)
        ma = to_mask(a)
        if a not in chosen and all(ma & mb for mb in masks):
            chosen.append(a)
            masks.append(ma)
    return Family(frozenset(chosen), n, r)


def _suite_lemmas(report: Report, rs, ns, seed: int = 0, samples: int = 200) -> None:
    rng = random.Random(seed)
    bad_comp, bad_pot = [], []
    for _ in range(samples):
        r = rng.randint(2, 4)
        n = rng.randint(r + 1, 10)
        f = random_intersecting_family(rng, n, r)
        i = rng.randint(1, n - 1)
        j = rng.randint(i + 1, n)
        g = compress_family(f, i, j)
        if len(g) != len(f) or not is_intersecting(g):
            bad_comp.append(f"n={n} r={r} C_{i}{j}")
        steps = list(compression_steps(f))
        pots = [potential(s) for s in steps]
        if any(b >= a for a, b in zip(pots, pots[1:])) or not is_left_compressed(steps[-1]) \
                or not is_intersecting(steps[-1]) or len(steps[-1]) != len(f):
            bad_pot.append(f"n={n} r={r}")
    report.add("compression-preserves-intersecting", not bad_comp, _first(bad_comp), samples=samples)
    report.add("full-compression-terminates", not bad_pot, _first(bad_pot), samples=samples)

    for r in rs:
        cat = catalog(r)
        for n in ns(r):
            p = Params(n, r)
            # superset generation: generated family intersecting iff generators are
            if r <= 3:
                gens = [g for k in range(1, r + 1) for g in combinations(range(1, n + 1), k)]
                members = list(all_rsets(n, r))
                up = {g: [to_mask(a) for a in members if set(g) <= set(a)] for g in gens}
                bad = []
                for a, b in combinations(gens, 2):
                    cross = all(x & y for x in up[a] for y in up[b])
                    if cross != bool(set(a) & set(b)):
                        bad.append(f"{_fmt(a)},{_fmt(b)}")
                report.add("superset-generation", not bad, _first(bad), r=r, n=n)
            if n - 2 * r <= 4 and binom(n, r) <= 5000:
                bad = [str(e) for e in cat if not is_intersecting(materialize(e, p))]
                report.add("generated-intersecting", not bad, _first(bad), r=r, n=n)
            if binom(n, r) <= 2000:
                direct = {f.members for f in maximal_lcifs(p)}
                built = {materialize(e, p).members for e in cat}
                report.add("description-bijection", direct == built,
                           None if direct == built else f"direct={len(direct)} catalog={len(built)}",
                           r=r, n=n)
                bad = []
                for e in rng.sample(list(cat), min(len(cat), 20)):
                    for _ in range(10):
                        k = rng.randint(1, n - 1)
                        x = tuple(sorted(rng.sample(range(2, n + 1), k)))
                        xs = XSet.from_elements(x, r)
                        if eval_count(e, xs, p) != oracle_count(e, p, x):
                            bad.append(f"{e} X={_fmt(x)}")
                report.add("count-formula", not bad, _first(bad), r=r, n=n)


SUITES = {
    "borg": (_suite_borg, lambda r: range(2 * r, min(2 * r + 4, 10) + 1)),
    "main": (_suite_main, lambda r: range(2 * r + 2, 2 * r + 7)),
    "thresholds": (_suite_thresholds, lambda r: range(2 * r + 2, 2 * r + 9)),
    "ekr": (_suite_ekr, lambda r: range(2 * r, 2 * r + 5)),
    "lemmas": (_suite_lemmas, lambda r: (2 * r, 2 * r + 2)),
}


def verify_suite(name: str, rs: Iterable[int], ns: Iterable[int] | None = None) -> Report:
    """Run one named suite. ``ns`` overrides the per-r default n range."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    run, default_ns = SUITES[name]
    fixed = list(ns) if ns is not None else None
    report = Report(name)
    if name == "borg":
        report.notes.append("minimal and monotone refer to the shift order on equal-size sets")
    run(report, list(rs), (lambda r: fixed) if fixed is not None else default_ns)
    return report
