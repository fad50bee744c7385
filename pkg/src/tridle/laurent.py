"""Exact Laurent polynomials in two variables with integer coefficients.

A :class:`LaurentPoly` is an immutable sparse map ``(l, m) -> c`` standing for
``sum c * x**l * y**m``.  Exponents may be negative.  The module also provides
exact division, a subresultant-free primitive PRS gcd, a fraction-free
(Bareiss) determinant and evaluation over prime fields.

Term order everywhere is graded lexicographic with ``x > y``.
"""
from __future__ import annotations

import re
from functools import reduce
from math import gcd as igcd
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DivisionByZero, NonUnitEvaluation, NotDivisible, PolySyntaxError

__all__ = [
    "LaurentPoly", "Unit", "ZERO", "ONE", "X", "Y",
    "add", "mul", "exact_div", "gcd", "gcd_many", "unit_normalize",
    "det", "eval_mod_p", "parse_poly",
]


def _grlex(exp):
    l, m = exp
    return (l + m, l)


class LaurentPoly:
    """Immutable element of Z[x, 1/x, y, 1/y]."""

    __slots__ = ("_t", "_h")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        t = {}
        if terms:
            for (l, m), c in terms.items():
                if c:
                    t[(int(l), int(m))] = int(c)
        self._t = t
        self._h = None

    @classmethod
    def _raw(cls, t: dict) -> LaurentPoly:
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._t = t
        p._h = None
        return p

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, l: int = 0, m: int = 0, c: int = 1) -> LaurentPoly:
        return cls._raw({(l, m): c} if c else {})

    @classmethod
    def coerce(cls, v) -> LaurentPoly:
        if isinstance(v, LaurentPoly):
            return v
        if isinstance(v, int):
            return cls.const(v)
        if isinstance(v, str):
            return parse_poly(v)
        raise TypeError(f"cannot convert {type(v).__name__} to LaurentPoly")

    # -- container-ish -------------------------------------------------
    @property
    def terms(self) -> dict:
        """A copy of the term map."""
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_unit(self) -> bool:
        """True for ``±x^l y^m``."""
        if len(self._t) != 1:
            return False
        (c,) = self._t.values()
        return c == 1 or c == -1

    def coeff(self, l: int, m: int) -> int:
        return self._t.get((l, m), 0)

    def min_exponents(self) -> tuple[int, int]:
        if not self._t:
            return (0, 0)
        return (min(l for l, _ in self._t), min(m for _, m in self._t))

    def max_exponents(self) -> tuple[int, int]:
        if not self._t:
            return (0, 0)
        return (max(l for l, _ in self._t), max(m for _, m in self._t))

    def leading_term(self) -> tuple[tuple[int, int], int]:
        if not self._t:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._t, key=_grlex)
        return e, self._t[e]

    def shift(self, l: int, m: int) -> LaurentPoly:
        """Multiply by ``x^l y^m``."""
        if l == 0 and m == 0:
            return self
        return LaurentPoly._raw({(a + l, b + m): c for (a, b), c in self._t.items()})

    def scale(self, k: int) -> LaurentPoly:
        if k == 0:
            return ZERO
        if k == 1:
            return self
        return LaurentPoly._raw({e: c * k for e, c in self._t.items()})

    def substitute(self, x0: int | None = None, y0: int | None = None) -> LaurentPoly:
        """Substitute ±1 (or any unit integer) for a variable; stays integral."""
        out: dict = {}
        for (l, m), c in self._t.items():
            if x0 is not None:
                if x0 not in (1, -1):
                    raise ValueError("only x0 in {1, -1} keeps integer coefficients")
                c *= x0 ** (l % 2)
                l = 0
            if y0 is not None:
                if y0 not in (1, -1):
                    raise ValueError("only y0 in {1, -1} keeps integer coefficients")
                c *= y0 ** (m % 2)
                m = 0
            out[(l, m)] = out.get((l, m), 0) + c
        return LaurentPoly(out)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_unit():
                raise NotDivisible(f"{self} is not a unit")
            ((l, m), c) = next(iter(self._t.items()))
            return LaurentPoly._raw({(l * k, m * k): c ** (-k)})
        return reduce(mul, [self] * k, ONE)

    def __truediv__(self, other):
        return exact_div(self, LaurentPoly.coerce(other))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- text ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self._t.items(), key=lambda it: _grlex(it[0]), reverse=True)

    def to_string(self, names: Sequence[str] = ("x", "y")) -> str:
        if not self._t:
            return "0"
        out = []
        for i, ((l, m), c) in enumerate(self.sorted_terms()):
            mono = []
            for name, e in ((names[0], l), (names[1], m)):
                if e == 1:
                    mono.append(name)
                elif e:
                    mono.append(f"{name}^{e}")
            a = abs(c)
            if mono:
                body = "*".join(mono) if a == 1 else f"{a}*" + "*".join(mono)
            else:
                body = str(a)
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_latex(self, names: Sequence[str] = ("x", "y")) -> str:
        s = self.to_string(names)
        s = re.sub(r"\^(-?\d+)", r"^{\1}", s)
        return s.replace("*", "")

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPoly({self.to_string()!r})"


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({(0, 0): 1})
X = LaurentPoly._raw({(1, 0): 1})
Y = LaurentPoly._raw({(0, 1): 1})


class Unit(NamedTuple):
    """The unit ``sign * x^l * y^m``."""

    sign: int = 1
    l: int = 0
    m: int = 0

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.l, self.m, self.sign)

    def __str__(self):
        return LaurentPoly.monomial(self.l, self.m, self.sign).to_string()


# ---------------------------------------------------------------------------
# ring operations

def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if len(p._t) < len(q._t):
        p, q = q, p
    if not q._t:
        return p
    t = dict(p._t)
    for e, c in q._t.items():
        v = t.get(e, 0) + c
        if v:
            t[e] = v
        else:
            t.pop(e, None)
    return LaurentPoly._raw(t)


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    if not p._t or not q._t:
        return ZERO
    if len(p._t) < len(q._t):
        p, q = q, p
    if len(q._t) == 1:
        ((l, m), c) = next(iter(q._t.items()))
        return LaurentPoly._raw({(a + l, b + m): v * c for (a, b), v in p._t.items()})
    t: dict = {}
    get = t.get
    for (a, b), c in p._t.items():
        for (l, m), d in q._t.items():
            e = (a + l, b + m)
            t[e] = get(e, 0) + c * d
    return LaurentPoly._raw({e: c for e, c in t.items() if c})


def addmul(p: LaurentPoly | None, q: LaurentPoly, r: LaurentPoly) -> LaurentPoly:
    """``p + q*r`` without building the product; ``p`` may be None for zero."""
    t = dict(p._t) if p is not None else {}
    get = t.get
    for (a, b), c in q._t.items():
        for (l, m), d in r._t.items():
            e = (a + l, b + m)
            v = get(e, 0) + c * d
            if v:
                t[e] = v
            else:
                del t[e]
    return LaurentPoly._raw(t)


def _strip_monomial(p: LaurentPoly) -> tuple[LaurentPoly, int, int]:
    l, m = p.min_exponents()
    return p.shift(-l, -m), l, m


def _poly_div(p: dict, q: dict) -> dict:
    """Exact division of ordinary polynomials (non-negative exponents)."""
    lq = max(q, key=_grlex)
    cq = q[lq]
    rem = dict(p)
    quo: dict = {}
    qitems = list(q.items())
    while rem:
        lr = max(rem, key=_grlex)
        cr = rem[lr]
        dl, dm = lr[0] - lq[0], lr[1] - lq[1]
        if dl < 0 or dm < 0:
            raise NotDivisible("leading monomial not divisible")
        k, r = divmod(cr, cq)
        if r:
            raise NotDivisible("leading coefficient not divisible")
        quo[(dl, dm)] = k
        for (a, b), c in qitems:
            e = (a + dl, b + dm)
            v = rem.get(e, 0) - k * c
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return quo


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Return ``r`` with ``r * q == p``; raise :class:`NotDivisible` otherwise."""
    if not q._t:
        raise DivisionByZero("division by the zero polynomial")
    if not p._t:
        return ZERO
    if len(q._t) == 1:
        ((l, m), c) = next(iter(q._t.items()))
        out = {}
        for (a, b), v in p._t.items():
            k, r = divmod(v, c)
            if r:
                raise NotDivisible(f"{p} is not divisible by {q}")
            out[(a - l, b - m)] = k
        return LaurentPoly._raw(out)
    p0, pl, pm = _strip_monomial(p)
    q0, ql, qm = _strip_monomial(q)
    try:
        r = _poly_div(p0._t, q0._t)
    except NotDivisible:
        raise NotDivisible(f"{p} is not divisible by {q}") from None
    return LaurentPoly._raw(r).shift(pl - ql, pm - qm)


# ---------------------------------------------------------------------------
# normalisation and gcd

def unit_normalize(p: LaurentPoly) -> tuple[LaurentPoly, Unit]:
    """Split ``p = unit * q`` with ``q`` canonical.

    ``q`` has minimal x- and y-exponents zero and a positive leading
    coefficient in grlex order (x > y).
    """
    if not p._t:
        return ZERO, Unit(1, 0, 0)
    l, m = p.min_exponents()
    _, c = p.leading_term()
    s = 1 if c > 0 else -1
    q = p.shift(-l, -m)
    if s < 0:
        q = -q
    return q, Unit(s, l, m)


def _var_degree(p: LaurentPoly, var: int) -> int:
    return max(e[var] for e in p._t)


def _coeffs(p: LaurentPoly, var: int) -> dict[int, LaurentPoly]:
    """Coefficients of ``p`` viewed as a polynomial in variable ``var``."""
    out: dict[int, dict] = {}
    for e, c in p._t.items():
        k = e[var]
        rest = (0, e[1]) if var == 0 else (0, 0)
        out.setdefault(k, {})[rest] = c
    return {k: LaurentPoly._raw(t) for k, t in out.items()}


def _content(p: LaurentPoly, var: int) -> LaurentPoly:
    cs = list(_coeffs(p, var).values())
    g = cs[0]
    for c in cs[1:]:
        if g == ONE:
            break
        g = _pgcd(g, c, var + 1)
    return g


def _pgcd(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    """gcd of ordinary polynomials; ``var`` is the main variable (2 = constants).

    The sign of the result is arbitrary.
    """
    if not a._t:
        return b
    if not b._t:
        return a
    if var == 2:
        (ca,) = a._t.values()
        (cb,) = b._t.values()
        return LaurentPoly.const(igcd(ca, cb))
    ca, cb = _content(a, var), _content(b, var)
    g = _pgcd(ca, cb, var + 1)
    a, b = exact_div(a, ca), exact_div(b, cb)
    if _var_degree(a, var) < _var_degree(b, var):
        a, b = b, a
    while True:
        db = _var_degree(b, var)
        if db == 0:
            # b is primitive and constant in var, hence a unit here
            return g
        r = _prem(a, b, var)
        if not r._t:
            return mul(g, b)
        a, b = b, exact_div(r, _content(r, var))


def _prem(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    db = _var_degree(b, var)
    cb = _coeffs(b, var)
    lcb = cb[db]
    while a._t:
        da = _var_degree(a, var)
        if da < db:
            break
        lca = _coeffs(a, var)[da]
        sh = (da - db, 0) if var == 0 else (0, da - db)
        a = mul(lcb, a) - mul(lca, b).shift(*sh)
    return a


def gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Unit-normalised greatest common divisor; ``gcd(0, 0) == 0``."""
    if not p._t:
        return unit_normalize(q)[0]
    if not q._t:
        return unit_normalize(p)[0]
    if p.is_monomial() or q.is_monomial():
        ci = igcd(*(abs(c) for c in p._t.values()), *(abs(c) for c in q._t.values()))
        return LaurentPoly.const(ci)
    p0, _, _ = _strip_monomial(p)
    q0, _, _ = _strip_monomial(q)
    # cheap exits when one divides the other, the usual case inside a fold
    if len(q0._t) > len(p0._t):
        p0, q0 = q0, p0
    try:
        _poly_div(p0._t, q0._t)
        return unit_normalize(q0)[0]
    except NotDivisible:
        pass
    return unit_normalize(_pgcd(p0, q0, 0))[0]


def gcd_many(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    """Left fold of :func:`gcd` with early exit once the result is 1."""
    acc = ZERO
    for p in polys:
        if not p._t:
            continue
        acc = gcd(acc, p)
        if acc == ONE:
            break
    return acc


# ---------------------------------------------------------------------------
# determinants and evaluation

def det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant, fraction-free.

    Unit entries ``±x^l y^m`` are eliminated first by ordinary sparse
    elimination (exact, since dividing by a unit is exact), choosing the
    pivot of least fill-in.  The block that remains goes through Bareiss
    elimination, pivoting on the entry with fewest terms.
    """
    n = len(matrix)
    if n == 0:
        return ONE
    rows = []
    for row in matrix:
        if len(row) != n:
            raise ValueError("det needs a square matrix")
        rows.append({j: v for j, v in enumerate(map(LaurentPoly.coerce, row)) if v._t})
    return det_sparse(rows, list(range(n)))


def det_sparse(rows: list[dict], cols: list) -> LaurentPoly:
    """:func:`det` of a matrix given as sparse rows ``{column: entry}``.

    ``cols`` lists the column keys in order.  The rows are consumed.
    """
    if len(rows) != len(cols):
        raise ValueError("det needs a square matrix")
    if not rows:
        return ONE
    cols = list(cols)
    sign = 1
    scale = ONE
    count: dict = dict.fromkeys(cols, 0)
    for r in rows:
        for j in r:
            count[j] += 1
    while len(rows) > 1:
        if not all(count.values()):
            return ZERO
        best = None
        for i, r in enumerate(rows):
            rn = len(r) - 1
            for j, v in r.items():
                t = v._t
                if len(t) == 1 and abs(next(iter(t.values()))) == 1:
                    key = rn * (count[j] - 1)
                    if best is None or key < best[0]:
                        best = (key, i, j)
                        if key == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, i, j = best
        prow = rows.pop(i)
        for c in prow:
            count[c] -= 1
        piv = prow[j]
        if (i + cols.index(j)) % 2:
            sign = -sign
        cols.remove(j)
        del count[j]
        scale = mul(scale, piv)
        inv = piv ** -1
        for r in rows:
            f = r.pop(j, None)
            if f is None:
                continue
            lam = -mul(f, inv)
            for c, v in prow.items():
                if c == j:
                    continue
                old = r.get(c)
                w = addmul(old, lam, v)
                if w._t:
                    if old is None:
                        count[c] += 1
                    r[c] = w
                elif old is not None:
                    del r[c]
                    count[c] -= 1
    rest = _bareiss([[r.get(j, ZERO) for j in cols] for r in rows])
    res = mul(scale, rest)
    return -res if sign < 0 else res


def _bareiss(a: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(a)
    if n == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(n):
        best = None
        for i in range(k, n):
            row = a[i]
            for j in range(k, n):
                t = len(row[j]._t)
                if t and (best is None or t < best[0]):
                    best = (t, i, j)
                    if t == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            return ZERO
        _, i, j = best
        if i != k:
            a[i], a[k] = a[k], a[i]
            sign = -sign
        if j != k:
            for row in a:
                row[j], row[k] = row[k], row[j]
            sign = -sign
        piv = a[k][k]
        if k == n - 1:
            break
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            for j in range(k + 1, n):
                v = mul(piv, ri[j])
                if f._t and rk[j]._t:
                    v = v - mul(f, rk[j])
                ri[j] = exact_div(v, prev) if prev is not ONE else v
            ri[k] = ZERO
        prev = piv
    res = a[n - 1][n - 1]
    return -res if sign < 0 else res


def eval_mod_p(p: LaurentPoly, x0: int, y0: int, prime: int) -> int:
    """Value of ``p`` at ``(x0, y0)`` in the field with ``prime`` elements."""
    if x0 % prime == 0 or y0 % prime == 0:
        raise NonUnitEvaluation(f"({x0}, {y0}) is not a pair of units mod {prime}")
    s = 0
    for (l, m), c in p._t.items():
        s += c * pow(x0, l, prime) * pow(y0, m, prime)
    return s % prime


# ---------------------------------------------------------------------------
# parsing

def parse_poly(text: str, names: Sequence[str] = ("x", "y")) -> LaurentPoly:
    """Parse the grammar produced by :meth:`LaurentPoly.to_string`.

    Juxtaposition, ``*`` and ``**`` exponents are accepted.
    """
    s = text.replace("**", "^").replace(" ", "")
    if not s:
        raise PolySyntaxError("empty polynomial")
    # protect negative exponents from the term splitter
    s = re.sub(r"\^\(?-(\d+)\)?", r"^~\1", s)
    if s[0] not in "+-":
        s = "+" + s
    pieces = re.findall(r"([+-])([^+-]+)", s)
    if "".join(sg + body for sg, body in pieces) != s:
        raise PolySyntaxError(f"cannot parse {text!r}")
    out: dict = {}
    for sg, body in pieces:
        c, l, m = 1, 0, 0
        body = body.replace("~", "-")
        toks = re.findall(r"\d+|[a-zA-Z](?:\^-?\d+)?|\*", body)
        if "".join(toks) != body or body[0] == "*" or body[-1] == "*" or "**" in body:
            raise PolySyntaxError(f"bad term {body!r}")
        for tok in toks:
            if tok == "*":
                continue
            if tok.isdigit():
                c *= int(tok)
                continue
            name, _, e = tok.partition("^")
            e = int(e) if e else 1
            if name == names[0]:
                l += e
            elif name == names[1]:
                m += e
            else:
                raise PolySyntaxError(f"unknown variable {name!r}")
        if sg == "-":
            c = -c
        out[(l, m)] = out.get((l, m), 0) + c
    return LaurentPoly(out)
