import itertools
from math import gcd

import pytest

from tridle.catalog import catalog, catalog_names
from tridle.delta import colorings_mod_p
from tridle.errors import BudgetExceeded, NotSolvable
from tridle.finite import (FiniteTridle, affine_tridle, canonical_form, check_r3,
                           count_colorings, enumerate_tridles, from_f4_table, linear_tridle)
from tridle.moves import fuzz

XOR = from_f4_table(2, lambda a, b, c: a + b + c)
SMALL = [nm for nm in catalog_names() if catalog(nm).n <= 6]


def test_xor_is_solvable_and_compliant():
    assert check_r3(XOR).r3_ok
    for a, b, c, d in itertools.product(range(2), repeat=4):
        assert XOR.holds(a, b, c, d) == ((a + b + c + d) % 2 == 0)


def test_product_is_not_solvable():
    with pytest.raises(NotSolvable, match="coordinate"):
        from_f4_table(2, lambda a, b, c: a * b * c)


def test_trivial_tridle():
    t = from_f4_table(1, [0])
    assert check_r3(t).r3_ok
    assert count_colorings(catalog("figure-eight"), None, t) == 1


def test_table_forms_agree():
    flat = list(XOR.f4)
    nested = [[[flat[(a * 2 + b) * 2 + c] for c in range(2)] for b in range(2)] for a in range(2)]
    assert from_f4_table(2, flat) == from_f4_table(2, nested) == XOR
    with pytest.raises(ValueError):
        from_f4_table(2, [0, 1])


def test_solvers_are_consistent():
    t = linear_tridle(5, 2, 3)
    for a, b, c in itertools.product(range(5), repeat=3):
        d = t.F4(a, b, c)
        assert t.F1(b, c, d) == a and t.F2(c, d, a) == b and t.F3(d, a, b) == c


@pytest.mark.parametrize("p", [3, 5])
def test_linear_tridles_comply(p):
    for x0, y0 in itertools.product(range(1, p), repeat=2):
        assert check_r3(linear_tridle(p, x0, y0)).r3_ok


def test_noncompliant_table_reports_counterexample():
    # every solvable order-2 table complies, so the witness lives at order 3
    t = from_f4_table(3, lambda a, b, c: a + b + c)
    rep = check_r3(t)
    assert rep.solvable and not rep.r3_ok
    assert rep.counterexample is not None and rep.equation in (1, 2)


def test_order_two_tables_all_comply():
    for flat in itertools.product(range(2), repeat=8):
        try:
            t = from_f4_table(2, flat)
        except NotSolvable:
            continue
        assert check_r3(t).r3_ok


def test_affine_compliance_criterion():
    # alpha*a + beta*b + gamma*c + delta*d complies exactly when alpha*gamma = beta*delta
    for k in (3, 4, 5):
        units = [u for u in range(1, k) if gcd(u, k) == 1]
        for al, be, ga, de in itertools.product(units, repeat=4):
            ok = check_r3(affine_tridle(k, al, be, ga, de)).r3_ok
            assert ok == ((al * ga - be * de) % k == 0)


def test_trefoil_xor_colorings():
    assert count_colorings(catalog("trefoil-left"), None, XOR) == 4
    assert colorings_mod_p(catalog("trefoil-left"), 2, 1, 1) == 4


@pytest.mark.parametrize("name", SMALL)
def test_affine_counts_match_rank_counts(name):
    d = catalog(name)
    for p, x0, y0 in ((2, 1, 1), (3, 1, 2), (5, 2, 3)):
        assert count_colorings(d, None, linear_tridle(p, x0, y0)) == colorings_mod_p(d, p, x0, y0)


def test_kink_gives_p_squared():
    for p in (2, 3, 5):
        for t in (linear_tridle(p, 1, 1), affine_tridle(p, 1, 1, 1, 1, 1)):
            assert count_colorings(catalog("unknot-1"), None, t) == p * p


def test_constant_shift_family_is_trivial():
    for kappa in range(3):
        t = affine_tridle(3, 1, 1, 1, 1, -kappa)
        assert check_r3(t).r3_ok
        counts = {count_colorings(catalog(nm), None, t)
                  for nm in ("unknot-1", "trefoil-left", "figure-eight", "5_2")}
        assert counts == {9}


def test_general_enumeration_k2():
    found = enumerate_tridles(2, "general")
    assert canonical_form(XOR) in {canonical_form(t) for t in found}
    assert len(found) == 2
    with pytest.raises(BudgetExceeded):
        enumerate_tridles(3, "general")


def test_affine_enumeration_k2_contains_checkerboard():
    found = {canonical_form(t) for t in enumerate_tridles(2, "affine")}
    assert canonical_form(affine_tridle(2, 1, 1, 1, 1, 0)) in found


def test_enumerated_counts_are_fuzz_invariant():
    for t in enumerate_tridles(2, "general") + enumerate_tridles(3, "affine"):
        for name in ("trefoil-left", "figure-eight"):
            walk = fuzz(catalog(name), 5, 6)
            counts = {count_colorings(w, None, t) for w in walk}
            assert len(counts) == 1


def test_bigon_forces_equal_regions():
    # w + a x + b xy + c y = 0 and w + a x + b' xy + c y = 0 give b = b'
    for t in (XOR, linear_tridle(5, 2, 3), affine_tridle(4, 1, 3, 3, 1, 2)):
        for w, a, c in itertools.product(range(t.k), repeat=3):
            sols = [b for b in range(t.k) if t.holds(w, a, b, c)]
            assert sols == [t.F3(c, w, a)]


def test_canonical_form_is_relabeling_invariant():
    t = affine_tridle(3, 1, 2, 2, 1, 1)
    perm = (2, 0, 1)
    inv = [perm.index(i) for i in range(3)]
    relabeled = from_f4_table(3, lambda a, b, c: perm[t.F4(inv[a], inv[b], inv[c])])
    assert canonical_form(relabeled) == canonical_form(t)


def test_document_round_trip():
    t = linear_tridle(3, 1, 2)
    assert FiniteTridle.from_document(t.to_document()).f4 == t.f4
