import random

import pytest

from tridle.catalog import catalog, catalog_names, knot_names
from tridle.delta import delta, delta_of_matrix
from tridle.errors import MultiComponent, PreconditionViolated
from tridle.laurent import ONE, X, Y, ZERO, Unit, parse_poly, unit_normalize
from tridle.matrix import (M1, M2, M3, M4, M5, PresentationMatrix, alexander_polynomial,
                           build_matrix, simplify, transform)

XY = X * Y
SMALL = [nm for nm in catalog_names() if 0 < catalog(nm).n <= 6]


def column_multisets(m):
    return sorted(tuple(sorted(str(v) for v in m.column(j) if v)) for j in range(m.shape[1]))


def bigon_configuration(m):
    """Append the bigon rows and the b', w columns to a matrix whose columns 0, 1, 2 play a, b, c."""
    nc = m.shape[1]
    r1 = [ZERO] * (nc + 2)
    r2 = [ZERO] * (nc + 2)
    for r, b in ((r1, 1), (r2, nc)):
        r[0], r[b], r[2], r[nc + 1] = X, XY, Y, ONE
    entries = [r1, r2] + [list(r) + [ZERO, ZERO] for r in m.entries]
    return PresentationMatrix(("s1", "s2") + m.rows, m.cols + ("b'", "w"),
                              tuple(tuple(r) for r in entries))


def test_trefoil_matrix_pattern():
    for name in ("trefoil-left", "trefoil-right"):
        m = build_matrix(catalog(name))
        assert m.shape == (3, 5)
        assert column_multisets(m) == sorted(
            [("y",) * 3, ("x",) * 3] + [("1", "x*y")] * 3)


def test_kink_row():
    m = build_matrix(catalog("unknot-1"))
    assert m.shape == (1, 3)
    assert sorted(str(v) for v in m.entries[0]) == sorted(["x", "x*y + 1", "y"])


def test_each_row_sums_to_the_full_relation():
    for name in SMALL:
        for row in build_matrix(catalog(name)).entries:
            total = ZERO
            for v in row:
                total = total + v
            assert total == 1 + X + XY + Y


def test_bigon_configuration_route():
    base = build_matrix(catalog("trefoil-left"))
    p = bigon_configuration(base)
    nc = base.shape[1]
    q = transform(p, M1(1, 0, -ONE))
    assert [v for v in q.entries[1] if v] == [-XY, XY]
    q = transform(q, M3(1, nc, 1))
    q = transform(q, M2(0, q.cols.index("w")))
    assert q == base


@pytest.mark.parametrize("name", SMALL)
def test_bigon_configuration_simplifies_to_base(name):
    base = build_matrix(catalog(name))
    a, b = simplify(bigon_configuration(base)), simplify(base)
    assert a.shape == b.shape
    assert a.entries == b.entries


def test_transform_preconditions():
    m = build_matrix(catalog("trefoil-left"))
    with pytest.raises(PreconditionViolated):
        transform(m, M2(0, 1))
    with pytest.raises(PreconditionViolated):
        transform(m, M3(0, 0, 1))
    with pytest.raises(PreconditionViolated):
        transform(m, M1(0, 0, ONE))
    with pytest.raises(PreconditionViolated):
        transform(m, M5("diag", 0, 1))


def test_m4_round_trip():
    m = build_matrix(catalog("figure-eight"))
    there = transform(m, M4(2, Unit(1, 1, 0)))
    assert transform(there, M4(2, Unit(1, -1, 0))) == m


def random_moves(m, rng, count):
    for _ in range(count):
        nr, nc = m.shape
        kind = rng.randrange(3) if nr >= 2 else 1
        if kind == 0:
            i, j = rng.sample(range(nr), 2)
            lam = parse_poly(rng.choice(["1", "-x", "x*y^-1", "2 + y"]))
            op = M1(i, j, lam)
        elif kind == 1:
            op = M4(rng.randrange(nr), Unit(rng.choice((1, -1)), rng.randint(-2, 2), rng.randint(-2, 2)))
        else:
            axis = rng.choice(("row", "col"))
            op = M5(axis, *rng.sample(range(nr if axis == "row" else nc), 2))
        m = transform(m, op)
    return m


@pytest.mark.parametrize("name", ["trefoil-left", "figure-eight", "5_2", "hopf"])
def test_random_move_sequences_keep_delta(name):
    rng = random.Random(name)
    m = build_matrix(catalog(name))
    target = unit_normalize(delta_of_matrix(m))[0]
    for _ in range(5):
        assert unit_normalize(delta_of_matrix(random_moves(m, rng, 6)))[0] == target


@pytest.mark.parametrize("name", SMALL)
def test_simplify_paths_agree(name):
    m = build_matrix(catalog(name))
    history = []
    slow = simplify(m, history=history)
    assert simplify(m) == slow
    replay = m
    for op in history:
        replay = transform(replay, op)
    assert replay == slow
    assert simplify(slow) == slow


def test_simplify_keeps_delta_on_kinked_trefoil():
    from tridle.moves import MoveSite, apply
    d = apply(catalog("trefoil-left"), MoveSite("R1_add", (1,), "left-under"))
    m = build_matrix(d)
    assert m.shape == (4, 6)
    g = unit_normalize(delta_of_matrix(simplify(m)))[0]
    assert g == delta(catalog("trefoil-left")).delta


@pytest.mark.parametrize("name,expected", [
    ("trefoil-left", "t^2 - t + 1"),
    ("trefoil-right", "t^2 - t + 1"),
    ("figure-eight", "t^2 - 3*t + 1"),
    ("unknot-1", "1"),
    ("unknot-0", "1"),
    ("5_1", "t^4 - t^3 + t^2 - t + 1"),
    ("8_20", "t^4 - 2*t^3 + 3*t^2 - 2*t + 1"),
])
def test_alexander_values(name, expected):
    assert alexander_polynomial(catalog(name)).to_string(("t", "_")) == expected


def test_alexander_needs_a_knot():
    with pytest.raises(MultiComponent):
        alexander_polynomial(catalog("hopf"))


def test_alexander_is_symmetric():
    for name in knot_names():
        a = alexander_polynomial(catalog(name))
        top = a.max_exponents()[0]
        assert all(a.coeff(top - l, 0) == c for (l, _), c in a.items())
