"""Independent reference implementations used only by the tests."""
import sympy

from tridle.delta import minor_selections
from tridle.laurent import ONE, ZERO, LaurentPoly, mul, unit_normalize
from tridle.matrix import build_matrix

sx, sy = sympy.symbols("x y")


def to_sympy(p):
    return sum((c * sx ** l * sy ** m for (l, m), c in p.items()), sympy.Integer(0))


def cofactor(m):
    """Determinant by first-row expansion."""
    n = len(m)
    if n == 0:
        return ONE
    if n == 1:
        return m[0][0]
    total = ZERO
    for j, v in enumerate(m[0]):
        if not v:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = mul(v, cofactor(minor))
        total = total + term if j % 2 == 0 else total - term
    return total


def naive_delta(d):
    """Cofactor minors folded with sympy's gcd, then stripped of monomial factors."""
    m = build_matrix(d)
    if m.shape[0] == 0:
        return ONE
    g = sympy.Integer(0)
    for sel in minor_selections(*m.shape):
        minor = cofactor([[row[j] for j in sel] for row in m.entries])
        if minor:
            l, k = minor.min_exponents()
            g = sympy.gcd(g, to_sympy(minor.shift(-l, -k)))
    poly = sympy.Poly(g, sx, sy)
    return unit_normalize(LaurentPoly({e: int(c) for e, c in poly.terms()}))[0]
