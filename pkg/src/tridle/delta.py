"""The two-variable invariant Delta(D) and coloring counts over prime fields.

Delta(D) is the gcd of all maximal minors of the presentation matrix, taken
up to units ``±x^l y^m``; here it is always reported in unit-normalised form.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .diagram import Diagram, Unknot0
from .errors import NonUnitEvaluation, ShapeError
from .laurent import (ONE, ZERO, LaurentPoly, addmul, det, det_sparse, eval_mod_p, exact_div, gcd_many,
                      mul, unit_normalize)
from .matrix import PresentationMatrix, build_matrix, simplify

__all__ = [
    "DeltaResult", "maximal_minors", "delta", "delta_of_matrix", "xy_form",
    "colorings_mod_p", "rank_mod_p", "minor_selections", "InvariantProfile",
    "invariant_profile", "DEFAULT_GRID",
]

DEFAULT_GRID = ((2, 1, 1), (3, 1, 1), (5, 2, 3))


@dataclass(frozen=True)
class DeltaResult:
    delta: LaurentPoly
    minor_count: int
    xy_form: LaurentPoly | None

    def to_document(self) -> dict:
        doc = {
            "delta": self.delta.to_string(),
            "delta_latex": self.delta.to_latex(),
            "minor_count": self.minor_count,
            "unit_ambiguity": "±x^l y^m",
        }
        if self.xy_form is not None:
            doc["xy_form"] = self.xy_form.to_string(("t", "_"))
        return doc


def minor_selections(nrows: int, ncols: int) -> list[tuple[int, ...]]:
    """Column selections in lexicographic order of the dropped columns."""
    if ncols < nrows:
        raise ShapeError(f"{nrows}x{ncols} matrix has no maximal minors")
    out = []
    for dropped in itertools.combinations(range(ncols), ncols - nrows):
        ds = set(dropped)
        out.append(tuple(j for j in range(ncols) if j not in ds))
    return out


def _det_job(args) -> LaurentPoly:
    rows, cols = args
    return det_sparse([{j: r[j] for j in cols if j in r} for r in rows], cols)


def _parity(seq) -> int:
    inv = sum(1 for a, b in itertools.combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def _unit_row_reduce(rows: list[dict]) -> list[dict]:
    """Clear the column of each unit pivot using row operations only.

    Row operations leave every maximal minor unchanged, and the cleared
    columns make the later determinants nearly free.
    """
    done_rows: set[int] = set()
    done_cols: set = set()
    while True:
        colcount: dict = {}
        for r in rows:
            for j in r:
                colcount[j] = colcount.get(j, 0) + 1
        best = None
        for i, r in enumerate(rows):
            if i in done_rows:
                continue
            for j, v in r.items():
                t = v._t
                if j not in done_cols and len(t) == 1 and abs(next(iter(t.values()))) == 1:
                    key = (len(r) - 1) * (colcount[j] - 1)
                    if best is None or key < best[0]:
                        best = (key, i, j)
        if best is None:
            return rows
        _, i, j = best
        done_rows.add(i)
        done_cols.add(j)
        prow = rows[i]
        inv = prow[j] ** -1
        for k, r in enumerate(rows):
            if k == i or j not in r:
                continue
            lam = -mul(r.pop(j), inv)
            for c, v in prow.items():
                if c == j:
                    continue
                w = addmul(r.get(c), lam, v)
                if w._t:
                    r[c] = w
                else:
                    r.pop(c, None)


def maximal_minors(m: PresentationMatrix, workers: int | None = None) -> list[LaurentPoly]:
    """Determinants of every maximal square column-selection of ``m``.

    Unit pivots are first cleared by row operations, then one nonzero minor
    det(B) is located.  With C the remaining columns and A = adj(B) C (one
    Cramer determinant per entry), the minor that swaps the columns at
    positions I of B for the columns W of C is det(A[I, W]) / det(B)^(|I|-1).
    For an n x (n+2) matrix this costs 2n + 1 determinants instead of
    (n+2 choose 2).

    With ``workers > 1`` the Cramer determinants are spread over a process
    pool; the result does not depend on the pool.
    """
    nr, nc = m.shape
    sels = minor_selections(nr, nc)
    if nr == 0:
        return [ONE]
    rows = _unit_row_reduce([{j: v for j, v in enumerate(r) if v} for r in m.entries])
    out = [ZERO] * len(sels)
    base = None
    for k, sel in enumerate(sels):
        b = _det_job((rows, list(sel)))
        if b:
            base = k
            out[k] = b
            break
    if base is None:
        return out
    J = list(sels[base])
    W = [j for j in range(nc) if j not in set(J)]
    jobs = []
    for i in range(nr):
        for w in W:
            placed = J[:i] + [w] + J[i + 1:]
            jobs.append((rows, placed))
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            vals = list(ex.map(_det_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        vals = [_det_job(j) for j in jobs]
    A = [vals[i * len(W):(i + 1) * len(W)] for i in range(nr)]
    db = out[base]
    wpos = {w: k for k, w in enumerate(W)}
    for k, sel in enumerate(sels):
        if k == base:
            continue
        ss = set(sel)
        I = [i for i, j in enumerate(J) if j not in ss]
        Wk = [w for w in W if w in ss]
        placed = list(J)
        for i, w in zip(I, Wk):
            placed[i] = w
        sub = [[A[i][wpos[w]] for w in Wk] for i in I]
        if len(I) == 1:
            v = sub[0][0]
        elif len(I) == 2:
            v = mul(sub[0][0], sub[1][1]) - mul(sub[0][1], sub[1][0])
        else:
            v = det(sub)
        for _ in range(len(I) - 1):
            v = exact_div(v, db)
        out[k] = -v if _parity(placed) < 0 else v
    return out


def delta_of_matrix(m: PresentationMatrix, workers: int | None = None) -> LaurentPoly:
    if m.shape[0] == 0:
        return ONE
    return gcd_many(maximal_minors(m, workers))


def xy_form(p: LaurentPoly) -> LaurentPoly | None:
    """``q`` with ``q(xy) == p``, as a polynomial in the first variable; None if p ∉ Z[xy]."""
    if any(l != m for (l, m) in p._t):
        return None
    return LaurentPoly({(l, 0): c for (l, _), c in p.items()})


def delta(d: Diagram | Unknot0, *, reduce: bool = False,
          workers: int | None = None) -> DeltaResult:
    """Delta(D) of a diagram.

    By default every maximal minor of the full n x (n+2) matrix is computed.
    ``reduce=True`` first runs :func:`simplify`, which leaves the gcd
    unchanged and is much cheaper on larger diagrams.
    """
    if isinstance(d, Unknot0):
        return DeltaResult(ONE, 1, ONE)
    m = build_matrix(d)
    if reduce:
        m = simplify(m)
    nr, nc = m.shape
    count = len(minor_selections(nr, nc))
    g = unit_normalize(delta_of_matrix(m, workers))[0]
    return DeltaResult(g, count, xy_form(g))


def rank_mod_p(rows: Sequence[Sequence[int]], prime: int) -> int:
    a = [[v % prime for v in r] for r in rows]
    rank = 0
    ncol = len(a[0]) if a else 0
    for j in range(ncol):
        piv = next((i for i in range(rank, len(a)) if a[i][j]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][j], -1, prime)
        pr = [v * inv % prime for v in a[rank]]
        a[rank] = pr
        for i in range(len(a)):
            if i != rank and a[i][j]:
                f = a[i][j]
                a[i] = [(v - f * w) % prime for v, w in zip(a[i], pr)]
        rank += 1
    return rank


def colorings_mod_p(d: Diagram | Unknot0, prime: int, x0: int, y0: int) -> int:
    """Number of region colorings by Z/prime satisfying every crossing relation."""
    if x0 % prime == 0 or y0 % prime == 0:
        raise NonUnitEvaluation(f"({x0}, {y0}) is not a pair of units mod {prime}")
    if isinstance(d, Unknot0):
        return prime ** 2
    return _count(build_matrix(d), prime, x0, y0)


def _sparse_rank_mod_p(rows: list[dict], prime: int) -> int:
    rank = 0
    while rows:
        r = rows.pop()
        if not r:
            continue
        j, v = next(iter(r.items()))
        inv = pow(v, -1, prime)
        rank += 1
        for other in rows:
            f = other.get(j)
            if not f:
                continue
            f = f * inv % prime
            for c, w in r.items():
                u = (other.get(c, 0) - f * w) % prime
                if u:
                    other[c] = u
                else:
                    other.pop(c, None)
    return rank


def _count(m: PresentationMatrix, prime: int, x0: int, y0: int) -> int:
    seen: dict = {}
    rows = []
    for row in m.entries:
        r = {}
        for j, v in enumerate(row):
            if v:
                e = seen.get(v)
                if e is None:
                    e = seen[v] = eval_mod_p(v, x0, y0, prime)
                if e:
                    r[j] = e
        rows.append(r)
    return prime ** (m.shape[1] - _sparse_rank_mod_p(rows, prime))


@dataclass(frozen=True)
class InvariantProfile:
    """Everything the Reidemeister checks compare, from one simplification."""

    delta: LaurentPoly
    alexander: LaurentPoly | None
    colorings: tuple[int, ...]

    def to_document(self) -> dict:
        return {
            "delta": self.delta.to_string(),
            "alexander": None if self.alexander is None else self.alexander.to_string(("t", "_")),
            "colorings": list(self.colorings),
        }


def invariant_profile(d: Diagram | Unknot0,
                      grid: Sequence[tuple[int, int, int]] = DEFAULT_GRID) -> InvariantProfile:
    """Delta, Alexander polynomial (knots only) and coloring counts over ``grid``.

    Coloring counts are read off the simplified matrix: M1-M3 moves keep
    the nullity of every evaluation at units, as well as the minor gcd.
    """
    from .matrix import alexander_polynomial
    for prime, x0, y0 in grid:
        if x0 % prime == 0 or y0 % prime == 0:
            raise NonUnitEvaluation(f"({x0}, {y0}) is not a pair of units mod {prime}")
    if isinstance(d, Unknot0):
        return InvariantProfile(ONE, ONE, tuple(p ** 2 for p, _, _ in grid))
    m = simplify(build_matrix(d))
    g = unit_normalize(delta_of_matrix(m))[0]
    alex = alexander_polynomial(d) if d.components == 1 else None
    cols = tuple(_count(m, p, x0, y0) for p, x0, y0 in grid)
    return InvariantProfile(g, alex, cols)


def default_workers() -> int:
    env = os.environ.get("TRIDLE_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1
