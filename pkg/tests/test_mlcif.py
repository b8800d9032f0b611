import pytest

from lcif.census import family_size
from lcif.family import Family, materialize, maximal_lcifs, star
from lcif.mlcif import (
    Catalog,
    CatalogError,
    GenAntichain,
    cached_catalog,
    catalog,
    enumerate_mlcif,
    extract_generators,
    format_catalog,
    hilton_milner_gens,
    load_catalog,
    parse_catalog,
    save_catalog,
    star_gens,
    unique_extension_check,
)
from lcif.setcore import Params

# counts of maximal left-compressed intersecting families of [2r]^(r); r = 4
# and 5 were fixed by the direct search in family.maximal_lcifs
COUNTS = {2: 2, 3: 6, 4: 72, 5: 37145}


def ga(*gens):
    return GenAntichain.of(*gens)


def test_r2_catalog():
    assert list(catalog(2)) == [ga((1,)), ga((2, 3))]


def test_r3_catalog_matches_published_list():
    expected = {ga((1,)), ga((2, 3)), ga((3, 4, 5)), ga((1, 4), (2, 3, 4)),
                ga((1, 3), (2, 3, 5), (1, 4, 5)), ga((1, 2), (2, 4, 5))}
    assert set(catalog(3)) == expected
    assert len(catalog(3)) == 6


@pytest.mark.parametrize("r", [2, 3, 4])
def test_catalog_counts_match_direct_search(r):
    assert len(catalog(r)) == COUNTS[r]
    assert len(maximal_lcifs(Params(2 * r, r))) == COUNTS[r]


@pytest.mark.slow
def test_r5_catalog_count():
    assert len(catalog(5)) == COUNTS[5]
    assert len(maximal_lcifs(Params(10, 5))) == COUNTS[5]


def test_enumerate_guard():
    with pytest.raises(ValueError):
        enumerate_mlcif(7)
    with pytest.raises(ValueError):
        enumerate_mlcif(1)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_catalog_invariants(r):
    cat = catalog(r)
    cat.validate()
    assert star_gens() in cat.entries
    assert hilton_milner_gens(r) in cat.entries
    assert len(set(cat.entries)) == len(cat)
    for e, size in zip(cat, cat.sizes):
        assert e.fits(r)
        assert size == len(materialize(e, Params(2 * r, r)))


def test_extract_generators_examples():
    assert extract_generators(star(Params(4, 2))) == ga((1,))
    f = Family.of([(1, 2), (1, 3), (2, 3)], 4, 2)
    assert extract_generators(f) == ga((2, 3))
    for r in (3, 4, 5):
        hm = materialize(hilton_milner_gens(r), Params(2 * r, r))
        assert extract_generators(hm) == ga((1, r + 1), tuple(range(2, r + 2)))


def test_extract_generators_rejects_bad_input():
    with pytest.raises(ValueError):
        extract_generators(Family.of([(1, 2), (1, 3)], 4, 2))
    with pytest.raises(ValueError):
        extract_generators(Family.of([(1, 3)], 4, 2))
    with pytest.raises(ValueError):
        extract_generators(star(Params(5, 2)))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_extract_inverts_materialize(r):
    for e in catalog(r):
        assert extract_generators(materialize(e, Params(2 * r, r))) == e


def test_unique_extension_examples():
    assert unique_extension_check(ga((1,)), 3, 8)
    assert unique_extension_check(ga((2, 3)), 2, 6)
    for e in catalog(3):
        assert unique_extension_check(e, 3, 8)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_description_bijection(r):
    n = 2 * r + 2
    p = Params(n, r)
    direct = {f.members for f in maximal_lcifs(p)}
    built = {materialize(e, p).members for e in catalog(r)}
    assert direct == built
    assert len(direct) == COUNTS[r]


@pytest.mark.parametrize("r", [2, 3, 4])
def test_star_is_largest_above_2r(r):
    p = Params(2 * r + 2, r)
    sizes = {e: family_size(e, p) for e in catalog(r)}
    top = max(sizes.values())
    assert [e for e, s in sizes.items() if s == top] == [star_gens()]


def test_antichain_validation():
    with pytest.raises(ValueError):
        ga((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        ga((1, 2), (3, 4))
    with pytest.raises(ValueError):
        GenAntichain(())
    assert str(ga((2, 3, 4), (1, 4))) == "1,4|2,3,4"
    assert GenAntichain.parse("2,3,4|1,4") == ga((1, 4), (2, 3, 4))


def test_catalog_round_trip(tmp_path):
    cat = catalog(3)
    path = tmp_path / "c.txt"
    save_catalog(cat, path)
    again = load_catalog(path, 3)
    assert again == cat
    assert format_catalog(again) == path.read_text()
    text = path.read_text().splitlines()
    assert text[0] == "mlcif-catalog v1 r=3 count=6"
    assert text[1] == "r=3; gens=1; size2r=10"


def _mutate(cat, fn):
    lines = format_catalog(cat).splitlines()
    return "\n".join(fn(lines)) + "\n"


def test_catalog_rejects_duplicates():
    text = _mutate(catalog(3), lambda ls: [ls[0].replace("count=6", "count=7")] + ls[1:] + [ls[2]])
    with pytest.raises(CatalogError, match="duplicate"):
        parse_catalog(text)


def test_catalog_rejects_disjoint_generators():
    text = _mutate(catalog(3), lambda ls: ls[:-1] + ["r=3; gens=1,2|3,4,5; size2r=10"])
    with pytest.raises(CatalogError, match="disjoint"):
        parse_catalog(text)


@pytest.mark.parametrize("edit, message", [
    (lambda ls: ["mlcif-catalog v2 r=3 count=6"] + ls[1:], "version"),
    (lambda ls: [ls[0].replace("count=6", "count=5")] + ls[1:], "count"),
    (lambda ls: ls[:1] + [ls[1].replace("size2r=10", "size2r=9")] + ls[2:], "size"),
    (lambda ls: ls[:-1], "count"),
    (lambda ls: [ls[0], ls[2], ls[1]] + ls[3:], "canonical"),
    (lambda ls: ["garbage"], "header"),
])
def test_catalog_rejects_corruption(edit, message):
    with pytest.raises(CatalogError, match=message):
        parse_catalog(_mutate(catalog(3), edit))


def test_catalog_requires_star_and_hilton_milner():
    cat = catalog(3)
    entries = tuple(e for e in cat if e != star_gens())
    broken = Catalog(3, entries)
    with pytest.raises(CatalogError, match="missing"):
        broken.validate()


def test_cache_hit_skips_enumeration(tmp_path, monkeypatch):
    first = cached_catalog(3, tmp_path)
    assert (tmp_path / "mlcif-r3-v1.txt").exists()

    def boom(*a, **k):
        raise AssertionError("recomputed")

    import lcif.mlcif as mod
    monkeypatch.setattr(mod, "catalog", boom)
    assert cached_catalog(3, tmp_path) == first


def test_corrupt_cache_is_recomputed(tmp_path):
    (tmp_path / "mlcif-r2-v1.txt").write_text("nonsense\n")
    assert cached_catalog(2, tmp_path) == catalog(2)
    assert load_catalog(tmp_path / "mlcif-r2-v1.txt") == catalog(2)
