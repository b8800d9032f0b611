from itertools import combinations

import numpy as np
import pytest

from lcif.census import EventuallyNegative, XSet, eval_count, star_count
from lcif.family import materialize
from lcif.goodness import (
    BORG_A,
    SUITES,
    classifier,
    classify_at,
    classify_eventual,
    good_sets,
    hilton_milner_check,
    minimal_good,
    theorem_main_predicate,
    verify_suite,
)
from lcif.mlcif import GenAntichain, catalog, hilton_milner_gens
from lcif.setcore import Params, to_mask


def xs(elems, r):
    return XSet.from_elements(elems, r)


@pytest.mark.parametrize("x", [(2, 3, 9), (3, 9)])
def test_classify_at_counterexamples(x):
    v = classify_at(xs(x, 3), Params(10, 3))
    assert not v.good
    assert GenAntichain.of((2, 3)) in [w.family for w in v.witnesses]
    for w in v.witnesses:
        assert w.family_count > w.star_count


def test_classify_at_witness_counts():
    v = classify_at(xs((3, 9), 3), Params(10, 3))
    w = next(w for w in v.witnesses if w.family == GenAntichain.of((2, 3)))
    assert (w.family_count, w.star_count) == (16, 15)


def test_classify_at_good_examples():
    v = classify_at(xs((2, 4, 6), 3), Params(8, 3))
    assert v.good and v.witnesses == () and v.shortcut is None
    v = classify_at(xs((2, 3, 4, 5), 3), Params(8, 3))
    assert v.good and v.shortcut == BORG_A
    v = classify_at(xs((2, 3, 4, 5), 3), Params(8, 3), confirm=True)
    assert v.good and v.shortcut == BORG_A


def test_classify_at_validates():
    with pytest.raises(ValueError):
        classify_at(xs((2,), 3), Params(5, 3))
    with pytest.raises(ValueError):
        classify_at(XSet((2,), 3), Params(8, 3))


def test_classify_eventual_examples():
    v = classify_eventual(xs((5,), 3), 3)
    assert v.eventually_good and v.threshold is not None
    v = classify_eventual(xs((2, 3, 4), 3), 3)
    assert not v.eventually_good and v.threshold is None
    hm = hilton_milner_gens(3)
    assert any(e == hm and isinstance(s, EventuallyNegative) for e, s in v.per_family)
    v = classify_eventual(xs((2, 4, 6), 3), 3)
    assert v.eventually_good and v.threshold == 6


@pytest.mark.parametrize("r", [3, 4])
def test_thresholds_are_exact(r):
    for x in [xs(s, r) for k in range(1, r + 1) for s in combinations(range(2, 2 * r + 1), k)]:
        v = classify_eventual(x, r)
        if not v.eventually_good:
            continue
        n0 = v.threshold
        for n in range(max(n0, 2 * r + x.m), 2 * r + 10):
            assert classify_at(x, Params(n, r)).good
        if n0 > 2 * r:
            assert not classify_at(x, Params(n0 - 1, r)).good


@pytest.mark.parametrize("x, r, expected", [
    ((2, 3, 9), 4, False),
    ((4, 9), 4, True),
    ((2, 3, 4, 5, 12), 5, True),
    ((2, 3, 4), 3, False),
    ((5,), 3, True),
    ((3, 5), 3, False),
    ((2, 4), 2, True),
    ((2, 3), 2, False),
    ((4,), 2, True),
])
def test_theorem_main_predicate(x, r, expected):
    assert theorem_main_predicate(xs(x, r), r) is expected


def test_theorem_main_predicate_rejects_large_x():
    with pytest.raises(ValueError):
        theorem_main_predicate(xs((2, 3, 4, 5), 3), 3)


@pytest.mark.parametrize("r", [3, 4])
def test_eventual_matches_predicate(r):
    for k in range(1, r + 1):
        for s in combinations(range(2, 2 * r + 1), k):
            x = xs(s, r)
            assert classify_eventual(x, r).eventually_good == theorem_main_predicate(x, r)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_classify_matches_materialized_counts(r):
    # direct counts over every materialized catalog family
    cat = catalog(r)
    xsets = [s for k in range(1, 2 * r) for s in combinations(range(2, 2 * r + 1), k)]
    xmasks = np.array([to_mask(s) for s in xsets], dtype=np.uint64)
    for n in range(2 * r, 2 * r + 7):
        p = Params(n, r)
        counts = []
        for e in cat:
            members = np.array([to_mask(a) for a in materialize(e, p)], dtype=np.uint64)
            counts.append(((members[:, None] & xmasks[None, :]) != 0).sum(axis=0))
        counts = np.array(counts)
        brute = (counts <= counts[cat.index(GenAntichain.of((1,)))]).all(axis=0)
        clf = classifier(r)
        got = clf.good_at([xs(s, r) for s in xsets], [n])[:, 0]
        assert (got == brute).all()


def test_good_sets_guard():
    with pytest.raises(ValueError):
        good_sets(Params(22, 5))


def test_minimal_good_r3():
    found = minimal_good(Params(6, 3), size=3)
    assert (2, 4, 6) in found
    assert found == [(2, 4, 6)]


@pytest.mark.slow
@pytest.mark.parametrize("size, expected", [(2, [(7, 10)]), (3, [(5, 8, 10)])])
def test_minimal_good_r5(size, expected):
    assert minimal_good(Params(10, 5), size=size) == expected


@pytest.mark.parametrize("r", [3, 4])
def test_hilton_milner_beats_star_by_one(r):
    assert hilton_milner_check(r, 2 * r) == []
    assert hilton_milner_check(r, 2 * r + 2) == []


def test_hilton_milner_direct_count():
    r, n = 3, 9
    p = Params(n, r)
    hm = hilton_milner_gens(r)
    for k in (1, 2, 3):
        for s in combinations(range(2, r + 2), k):
            x = xs(s, r)
            assert eval_count(hm, x, p) == star_count(x, p) + 1


@pytest.mark.parametrize("name, rs", [
    ("borg", [2, 3]),
    ("main", [3, 4]),
    ("ekr", [2, 3, 4]),
    ("lemmas", [2, 3]),
    ("thresholds", [2, 3, 4]),
])
def test_suites_pass(name, rs):
    report = verify_suite(name, rs)
    failed = [r.record() for r in report.results if not r.passed]
    assert report.ok, failed
    assert report.results


def test_borg_suite_notes_the_order():
    report = verify_suite("borg", [2], [4])
    assert any("shift order" in n for n in report.notes)
    assert {r.claim for r in report.results} == {"borg-a", "borg-b", "borg-c", "borg-d"}


def test_suite_names():
    assert set(SUITES) == {"borg", "main", "thresholds", "ekr", "lemmas"}
    with pytest.raises(ValueError):
        verify_suite("nope", [3])


def test_failed_claim_reports_counterexample():
    report = verify_suite("ekr", [3], [6])
    report.add("demo", False, "{2,3}", r=3)
    assert not report.ok
    assert report.results[-1].record() == "claim=demo; r=3; status=fail; counterexample={2,3}"
