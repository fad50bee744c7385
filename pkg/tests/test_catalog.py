import pytest

from tridle.catalog import braid_closure, catalog, catalog_names, knot_names, self_test
from tridle.diagram import UNKNOT0, diagrams_isomorphic
from tridle.errors import UnknownCatalogEntry
from tridle.matrix import alexander_polynomial


def test_named_entries_first():
    names = catalog_names()
    assert names[:7] == ["unknot-0", "unknot-1", "unknot-2", "trefoil-left",
                         "trefoil-right", "figure-eight", "hopf"]
    assert names[-1] == "8_21"
    assert len([n for n in names if "_" in n]) == 35


def test_self_test_validates_everything():
    assert self_test() == catalog_names()


def test_crossing_numbers_match_names():
    for name in catalog_names()[7:]:
        assert catalog(name).n == int(name.split("_")[0])


def test_special_entries():
    assert catalog("unknot-0") is UNKNOT0
    assert catalog("unknot-2").n == 2
    assert catalog("hopf").components == 2
    assert set(catalog("trefoil-left").signs) == {-1}
    assert set(catalog("trefoil-right").signs) == {1}


def test_unknown_entry():
    with pytest.raises(UnknownCatalogEntry):
        catalog("9_1")


def test_braid_closures():
    assert diagrams_isomorphic(braid_closure([1, 1, 1]), catalog("trefoil-right"))
    fig8 = braid_closure([1, -2, 1, -2])
    assert alexander_polynomial(fig8) == alexander_polynomial(catalog("figure-eight"))
    assert braid_closure([1, 1]).components == 2


def test_table_knots_have_distinct_alexander_polynomials():
    polys = [alexander_polynomial(catalog(n)) for n in knot_names() if "_" in n]
    assert len(polys) == 35
    assert len(set(polys)) == len(polys)
