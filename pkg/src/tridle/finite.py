"""Finite tridles: a quaternary relation F(a, b, c, d) = 0 on {0..k-1}.

Any three coordinates determine the fourth.  The relation is stored through
``d = F4(a, b, c)``; the other solvers use the cyclic argument order
``a = F1(b, c, d)``, ``b = F2(c, d, a)``, ``c = F3(d, a, b)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Callable, Sequence

from .diagram import Diagram, RegionMap, Unknot0, corner_labels
from .errors import BudgetExceeded, NotSolvable

__all__ = ["FiniteTridle", "ComplianceReport", "from_f4_table", "linear_tridle",
           "affine_tridle", "check_r3", "count_colorings", "enumerate_tridles",
           "canonical_form", "GENERAL_MAX_K"]

GENERAL_MAX_K = 2


@dataclass(frozen=True)
class FiniteTridle:
    k: int
    f4: tuple[int, ...]
    f1: tuple[int, ...]
    f2: tuple[int, ...]
    f3: tuple[int, ...]
    label: str = ""

    def _i(self, a, b, c):
        return (a * self.k + b) * self.k + c

    def F4(self, a, b, c):
        return self.f4[self._i(a, b, c)]

    def F1(self, b, c, d):
        return self.f1[self._i(b, c, d)]

    def F2(self, c, d, a):
        return self.f2[self._i(c, d, a)]

    def F3(self, d, a, b):
        return self.f3[self._i(d, a, b)]

    def holds(self, a, b, c, d) -> bool:
        return self.F4(a, b, c) == d

    def to_document(self) -> dict:
        doc = {"k": self.k, "f4": list(self.f4)}
        if self.label:
            doc["label"] = self.label
        return doc

    @classmethod
    def from_document(cls, doc) -> "FiniteTridle":
        return from_f4_table(doc["k"], doc["f4"], label=doc.get("label", ""))


def from_f4_table(k: int, table, label: str = "") -> FiniteTridle:
    """Build a tridle from ``F4`` given as a callable, a nested k*k*k table or a flat list.

    Raises NotSolvable when some coordinate is not uniquely determined by
    the other three.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if callable(table):
        flat = [table(a, b, c) % k for a, b, c in itertools.product(range(k), repeat=3)]
    else:
        flat = list(table)
        if flat and isinstance(flat[0], Sequence):
            flat = [v for plane in flat for row in plane for v in row]
        if len(flat) != k ** 3:
            raise ValueError(f"F4 table needs {k ** 3} entries, got {len(flat)}")
        if any(not 0 <= v < k for v in flat):
            raise ValueError("F4 values must lie in 0..k-1")
    size = k ** 3
    f1 = [None] * size
    f2 = [None] * size
    f3 = [None] * size

    def idx(a, b, c):
        return (a * k + b) * k + c

    for a, b, c in itertools.product(range(k), repeat=3):
        d = flat[idx(a, b, c)]
        for tab, key, coord, fixed in ((f1, idx(b, c, d), "a", (b, c, d)),
                                       (f2, idx(c, d, a), "b", (c, d, a)),
                                       (f3, idx(d, a, b), "c", (d, a, b))):
            if tab[key] is not None:
                raise NotSolvable(f"coordinate {coord} has two solutions when the others are {fixed}")
            tab[key] = (a, b, c)["abc".index(coord)]
    for tab, coord in ((f1, "a"), (f2, "b"), (f3, "c")):
        if None in tab:
            i = tab.index(None)
            fixed = (i // (k * k), (i // k) % k, i % k)
            raise NotSolvable(f"coordinate {coord} has no solution when the others are {fixed}")
    return FiniteTridle(k, tuple(flat), tuple(f1), tuple(f2), tuple(f3), label)


def _units(k: int) -> list[int]:
    return [u for u in range(1, k) if gcd(u, k) == 1] if k > 1 else [0]


def affine_tridle(k: int, alpha: int, beta: int, gamma: int, delta: int,
                  eps: int = 0) -> FiniteTridle:
    """``alpha*a + beta*b + gamma*c + delta*d + eps = 0`` over Z/k (coefficients units)."""
    if k == 1:
        return from_f4_table(1, [0], label="affine(1)")
    for v in (alpha, beta, gamma, delta):
        if gcd(v, k) != 1:
            raise NotSolvable(f"coefficient {v} is not a unit mod {k}")
    inv = pow(-delta, -1, k)
    label = f"affine({k}; {alpha % k},{beta % k},{gamma % k},{delta % k},{eps % k})"
    return from_f4_table(k, lambda a, b, c: inv * (alpha * a + beta * b + gamma * c + eps),
                         label=label)


def linear_tridle(prime: int, x0: int, y0: int) -> FiniteTridle:
    """The relation ``a + x*b + x*y*c + y*d = 0`` evaluated at units ``x0, y0``."""
    return affine_tridle(prime, 1, x0, x0 * y0, y0, 0)


@dataclass(frozen=True)
class ComplianceReport:
    solvable: bool
    r3_ok: bool
    counterexample: tuple[int, int, int, int] | None = None
    equation: int | None = None

    def to_document(self) -> dict:
        return {"solvable": self.solvable, "r3_ok": self.r3_ok,
                "counterexample": None if self.counterexample is None else list(self.counterexample),
                "equation": self.equation}


def check_r3(t: FiniteTridle) -> ComplianceReport:
    """Exhaustively test both third-move equations over all (X, Y, Z, W)."""
    F1, F2, F4 = t.F1, t.F2, t.F4
    for X, Y, Z, W in itertools.product(range(t.k), repeat=4):
        S = F4(Z, Y, X)
        U = F1(W, X, S)
        T = F2(Y, X, W)
        V2 = F1(T, Y, Z)
        if F2(Z, S, U) != V2:
            return ComplianceReport(True, False, (X, Y, Z, W), 1)
        if U != F4(V2, T, W):
            return ComplianceReport(True, False, (X, Y, Z, W), 2)
    return ComplianceReport(True, True)


# ---------------------------------------------------------------------------
# colorings

def count_colorings(d: Diagram | Unknot0, rm: RegionMap | None, t: FiniteTridle) -> int:
    """Number of maps regions -> {0..k-1} satisfying the relation at every crossing.

    Backtracking over regions by descending crossing incidence; a crossing
    with a single open region, filling one role, forces that region.
    """
    if isinstance(d, Unknot0):
        return t.k ** 2
    rm = rm if rm is not None else d.region_map
    nreg = len(rm.regions)
    cons = []
    touching: list[list[int]] = [[] for _ in range(nreg)]
    for c in range(d.n):
        lab = corner_labels(d, c)
        roles = (lab["a"], lab["b"], lab["c"], lab["d"])
        cons.append(roles)
        for r in set(roles):
            touching[r].append(c)
    order = sorted(range(nreg), key=lambda r: (-len(touching[r]), r))
    k = t.k
    f = (t.f1, t.f2, t.f3, t.f4)
    val = [-1] * nreg

    def solve(roles, pos):
        a, b, c, dd = (val[r] for r in roles)
        if pos == 0:
            return f[0][(b * k + c) * k + dd]
        if pos == 1:
            return f[1][(c * k + dd) * k + a]
        if pos == 2:
            return f[2][(dd * k + a) * k + b]
        return f[3][(a * k + b) * k + c]

    def propagate(start, trail):
        queue = [start]
        while queue:
            r = queue.pop()
            for ci in touching[r]:
                roles = cons[ci]
                open_ = [i for i, q in enumerate(roles) if val[q] < 0]
                if not open_:
                    a, b, c, dd = (val[q] for q in roles)
                    if t.f4[(a * k + b) * k + c] != dd:
                        return False
                elif len(open_) == 1:
                    q = roles[open_[0]]
                    v = solve(roles, open_[0])
                    val[q] = v
                    trail.append(q)
                    queue.append(q)
        return True

    def search(i):
        while i < nreg and val[order[i]] >= 0:
            i += 1
        if i == nreg:
            return 1
        r = order[i]
        total = 0
        for v in range(k):
            val[r] = v
            trail = [r]
            if propagate(r, trail):
                total += search(i + 1)
            for q in trail:
                val[q] = -1
        return total

    return search(0)


# ---------------------------------------------------------------------------
# enumeration

def canonical_form(t: FiniteTridle) -> tuple[int, ...]:
    """Lexicographically least F4 table over all relabelings of the elements."""
    k = t.k
    best = None
    for perm in itertools.permutations(range(k)):
        inv = [0] * k
        for i, p in enumerate(perm):
            inv[p] = i
        tab = tuple(perm[t.F4(inv[a], inv[b], inv[c])]
                    for a, b, c in itertools.product(range(k), repeat=3))
        if best is None or tab < best:
            best = tab
    return best


def enumerate_tridles(k: int, family: str = "affine") -> list[FiniteTridle]:
    """All solvable, third-move compliant tridles of a family, one per relabeling class.

    family "affine": alpha*a + beta*b + gamma*c + delta*d + eps over Z/k with
    unit coefficients.  family "general": every F4 table, only for k <= 2.
    Results are in order of canonical form.
    """
    found: dict[tuple, FiniteTridle] = {}
    if family == "general":
        if k > GENERAL_MAX_K:
            raise BudgetExceeded(f"general enumeration is limited to k <= {GENERAL_MAX_K}")
        cands: list[Callable[[], FiniteTridle]] = []
        for flat in itertools.product(range(k), repeat=k ** 3):
            cands.append(lambda flat=flat: from_f4_table(k, flat))
    elif family == "affine":
        us = _units(k)
        cands = [lambda c=c: affine_tridle(k, *c)
                 for c in itertools.product(us, us, us, us, range(k))]
    else:
        raise ValueError(f"unknown family {family!r}")
    for make in cands:
        try:
            t = make()
        except NotSolvable:
            continue
        if not check_r3(t).r3_ok:
            continue
        key = canonical_form(t)
        if key not in found:
            found[key] = t
    return [found[key] for key in sorted(found)]
