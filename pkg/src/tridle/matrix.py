"""Linear-tridle presentation matrices.

Each crossing contributes the relation ``a + x*b + x*y*c + y*d = 0`` on the
regions playing the four corner roles, giving a matrix with one row per
crossing and one column per region.  The moves M1-M5 act on these matrices;
:func:`simplify` applies them greedily.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .diagram import Diagram, RegionMap, Unknot0, corner_labels, role_assignment
from .errors import MultiComponent, PreconditionViolated
from .laurent import ONE, ZERO, LaurentPoly, Unit, addmul, det, det_sparse, mul, unit_normalize

__all__ = [
    "PresentationMatrix", "build_matrix", "M1", "M2", "M3", "M4", "M5",
    "transform", "simplify", "alexander_polynomial", "alexander_matrix",
    "ROLE_MONOMIAL", "region_name",
]

ROLE_MONOMIAL = {
    "a": ONE,
    "b": LaurentPoly.monomial(1, 0),
    "c": LaurentPoly.monomial(1, 1),
    "d": LaurentPoly.monomial(0, 1),
}


def region_name(i) -> str:
    if isinstance(i, str):
        return i
    if 0 <= i < 26:
        return "abcdefghijklmnopqrstuvwxyz"[i]
    return f"R{i}"


@dataclass(frozen=True)
class PresentationMatrix:
    rows: tuple
    cols: tuple
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.rows), len(self.cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[LaurentPoly]:
        return [r[j] for r in self.entries]

    def to_lists(self) -> list[list[LaurentPoly]]:
        return [list(r) for r in self.entries]

    # -- rendering -----------------------------------------------------
    def col_names(self) -> list[str]:
        return [region_name(c) for c in self.cols]

    def row_names(self) -> list[str]:
        return [r if isinstance(r, str) else f"r{r + 1}" for r in self.rows]

    def to_text(self) -> str:
        head = [""] + self.col_names()
        body = [[rn] + [("" if not e else e.to_string()) for e in row]
                for rn, row in zip(self.row_names(), self.entries)]
        table = [head] + body
        widths = [max(len(r[k]) for r in table) for k in range(len(head))]
        lines = ["  ".join(cell.rjust(w) for cell, w in zip(r, widths)).rstrip()
                 for r in table]
        return "\n".join(lines)

    def to_document(self) -> dict:
        return {
            "rows": self.row_names(),
            "cols": self.col_names(),
            "entries": [[e.to_string() for e in row] for row in self.entries],
        }

    def to_latex(self) -> str:
        """Row/column labelled array in the layout used for hand-drawn matrices."""
        ncol = len(self.cols)
        lines = [r"\begin{array}{c|" + "c" * ncol + "}",
                 " & ".join([""] + self.col_names()) + r" \\ \hline"]
        for rn, row in zip(self.row_names(), self.entries):
            rlabel = "r_{" + rn[1:] + "}" if rn.startswith("r") else rn
            cells = ["" if not e else e.to_latex() for e in row]
            lines.append(" & ".join([rlabel] + cells) + r" \\")
        lines.append(r"\end{array}")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def _pm(rows, cols, entries) -> PresentationMatrix:
    return PresentationMatrix(tuple(rows), tuple(cols), tuple(tuple(r) for r in entries))


def build_matrix(d: Diagram | Unknot0, rm: RegionMap | None = None) -> PresentationMatrix:
    """Relation matrix: one row per crossing, one column per region."""
    if isinstance(d, Unknot0):
        return _pm((), (), ())
    if rm is None:
        # diagrams are immutable, so the matrix is memoised next to region_map
        cached = d.__dict__.get("_matrix")
        if cached is None:
            cached = d.__dict__["_matrix"] = build_matrix(d, d.region_map)
        return cached
    ncol = len(rm.regions)
    entries = []
    for c in range(d.n):
        row = [ZERO] * ncol
        for role, reg in corner_labels(d, c).items():
            row[reg] = row[reg] + ROLE_MONOMIAL[role]
        entries.append(row)
    return _pm(range(d.n), range(ncol), entries)


# ---------------------------------------------------------------------------
# moves

@dataclass(frozen=True)
class M1:
    """row[target] += factor * row[source]"""
    target: int
    source: int
    factor: LaurentPoly


@dataclass(frozen=True)
class M2:
    """Delete ``row`` and ``col``; the column must hold a single unit entry."""
    row: int
    col: int


@dataclass(frozen=True)
class M3:
    """Row ``row`` is ``f`` at ``src``, ``-f`` at ``dst``: fold column src into dst.

    When ``f`` is a unit the now single-entry row and column ``src`` are
    deleted as well; otherwise only the column addition happens.
    """
    row: int
    src: int
    dst: int


@dataclass(frozen=True)
class M4:
    """Multiply ``row`` by the unit ``±x^l y^m``."""
    row: int
    unit: Unit


@dataclass(frozen=True)
class M5:
    """Swap two rows (``axis='row'``) or two columns (``axis='col'``)."""
    axis: str
    i: int
    j: int


MoveSpec = Union[M1, M2, M3, M4, M5]


def _check_index(k, n, what):
    if not 0 <= k < n:
        raise PreconditionViolated(f"{what} index {k} out of range 0..{n - 1}")


def transform(m: PresentationMatrix, op: MoveSpec) -> PresentationMatrix:
    nr, nc = m.shape
    e = m.to_lists()
    if isinstance(op, M1):
        _check_index(op.target, nr, "row")
        _check_index(op.source, nr, "row")
        if op.target == op.source:
            raise PreconditionViolated("M1: source and target rows coincide")
        lam = LaurentPoly.coerce(op.factor)
        src = e[op.source]
        e[op.target] = [t + mul(lam, s) for t, s in zip(e[op.target], src)]
        return _pm(m.rows, m.cols, e)
    if isinstance(op, M2):
        _check_index(op.row, nr, "row")
        _check_index(op.col, nc, "column")
        col = m.column(op.col)
        nz = [i for i, v in enumerate(col) if v]
        if nz != [op.row]:
            raise PreconditionViolated(
                f"M2: column {op.col} must have its only nonzero entry at row {op.row}")
        if not col[op.row].is_unit():
            raise PreconditionViolated(f"M2: entry {col[op.row]} is not of the form ±x^l y^m")
        return _delete(m, op.row, op.col)
    if isinstance(op, M3):
        _check_index(op.row, nr, "row")
        _check_index(op.src, nc, "column")
        _check_index(op.dst, nc, "column")
        if op.src == op.dst:
            raise PreconditionViolated("M3: columns coincide")
        row = e[op.row]
        nz = [j for j, v in enumerate(row) if v]
        if sorted(nz) != sorted((op.src, op.dst)):
            raise PreconditionViolated(
                f"M3: row {op.row} must have exactly two nonzero entries, at {op.src} and {op.dst}")
        f = row[op.src]
        if row[op.dst] != -f:
            raise PreconditionViolated("M3: the two entries must be f and -f")
        for r in e:
            r[op.dst] = r[op.dst] + r[op.src]
        out = _pm(m.rows, m.cols, e)
        if f.is_unit():
            out = _delete(out, op.row, op.src)
        return out
    if isinstance(op, M4):
        _check_index(op.row, nr, "row")
        u = op.unit if isinstance(op.unit, Unit) else Unit(*op.unit)
        if u.sign not in (1, -1):
            raise PreconditionViolated("M4: unit sign must be ±1")
        up = u.as_poly()
        e[op.row] = [mul(up, v) for v in e[op.row]]
        return _pm(m.rows, m.cols, e)
    if isinstance(op, M5):
        if op.axis == "row":
            _check_index(op.i, nr, "row")
            _check_index(op.j, nr, "row")
            rows = list(m.rows)
            rows[op.i], rows[op.j] = rows[op.j], rows[op.i]
            e[op.i], e[op.j] = e[op.j], e[op.i]
            return _pm(rows, m.cols, e)
        if op.axis == "col":
            _check_index(op.i, nc, "column")
            _check_index(op.j, nc, "column")
            cols = list(m.cols)
            cols[op.i], cols[op.j] = cols[op.j], cols[op.i]
            for r in e:
                r[op.i], r[op.j] = r[op.j], r[op.i]
            return _pm(m.rows, cols, e)
        raise PreconditionViolated(f"M5: axis must be 'row' or 'col', not {op.axis!r}")
    raise PreconditionViolated(f"unknown move {op!r}")


def _delete(m: PresentationMatrix, i: int, j: int) -> PresentationMatrix:
    rows = m.rows[:i] + m.rows[i + 1:]
    cols = m.cols[:j] + m.cols[j + 1:]
    entries = [r[:j] + r[j + 1:] for k, r in enumerate(m.entries) if k != i]
    return _pm(rows, cols, entries)


def _find_m2(m: PresentationMatrix):
    for j in range(len(m.cols)):
        nz = [i for i, r in enumerate(m.entries) if r[j]]
        if len(nz) == 1 and m.entries[nz[0]][j].is_unit():
            return M2(nz[0], j)
    return None


def _find_m3(m: PresentationMatrix):
    for i, r in enumerate(m.entries):
        nz = [j for j, v in enumerate(r) if v]
        if len(nz) == 2:
            j, k = nz
            if r[j].is_unit() and r[k] == -r[j]:
                return M3(i, j, k)
    return None


def _pivot(m: PresentationMatrix):
    """Unit entry minimising fill-in (Markowitz count); ties by position."""
    e = m.entries
    row_nz = [sum(1 for v in r if v) for r in e]
    col_nz = [sum(1 for r in e if r[j]) for j in range(len(m.cols))]
    best = None
    for i, r in enumerate(e):
        for j, v in enumerate(r):
            if v and v.is_unit():
                key = ((row_nz[i] - 1) * (col_nz[j] - 1), i, j)
                if best is None or key < best:
                    best = key
    return None if best is None else best[1:]


def simplify(m: PresentationMatrix, *, history: list | None = None) -> PresentationMatrix:
    """Shrink ``m`` with M2, M3 and unit-pivot M1 eliminations until none applies.

    The gcd of maximal minors is unchanged, and so is the nullity of every
    evaluation at units of a prime field.  When ``history`` is a list the
    applied moves are appended to it.
    """
    if history is None:
        return _simplify_sparse(m)
    while True:
        op = _find_m2(m) or _find_m3(m)
        if op is not None:
            m = transform(m, op)
            history.append(op)
            continue
        piv = _pivot(m)
        if piv is None:
            return m
        i, j = piv
        inv = m.entries[i][j] ** -1
        for k, r in enumerate(m.entries):
            if k != i and r[j]:
                op = M1(k, i, -mul(r[j], inv))
                m = transform(m, op)
                history.append(op)
        op = M2(i, j)
        m = transform(m, op)
        history.append(op)


def _unit(v: LaurentPoly) -> bool:
    t = v._t
    return len(t) == 1 and abs(next(iter(t.values()))) == 1


def _simplify_sparse(m: PresentationMatrix) -> PresentationMatrix:
    # same move order as the recorded path, on sparse rows with running column counts
    rows = [{j: v for j, v in enumerate(r) if v} for r in m.entries]
    rlab = list(m.rows)
    cols = list(range(len(m.cols)))
    count = dict.fromkeys(cols, 0)
    for r in rows:
        for j in r:
            count[j] += 1

    def drop_row(i):
        for j in rows[i]:
            count[j] -= 1
        del rows[i], rlab[i]

    def put(r, c, w):
        if w:
            if c not in r:
                count[c] += 1
            r[c] = w
        elif c in r:
            del r[c]
            count[c] -= 1

    while True:
        hit = None
        for j in cols:
            if count[j] == 1:
                i = next(k for k, r in enumerate(rows) if j in r)
                if _unit(rows[i][j]):
                    hit = (i, j)
                    break
        if hit is not None:
            i, j = hit
            drop_row(i)
            cols.remove(j)
            del count[j]
            continue
        pos = {j: p for p, j in enumerate(cols)}
        for i, r in enumerate(rows):
            if len(r) == 2:
                j, k = sorted(r, key=pos.__getitem__)
                if _unit(r[j]) and r[k] == -r[j]:
                    hit = (i, j, k)
                    break
        if hit is not None:
            i, j, k = hit
            drop_row(i)
            for rr in rows:
                v = rr.pop(j, None)
                if v is not None:
                    put(rr, k, rr.get(k, ZERO) + v)
            cols.remove(j)
            del count[j]
            continue
        # Markowitz key, ties to the earlier row and then the earlier column
        bk = bi = bp = None
        for i, r in enumerate(rows):
            rn = len(r) - 1
            for j, v in r.items():
                t = v._t
                if len(t) != 1:
                    continue
                c = next(iter(t.values()))
                if c != 1 and c != -1:
                    continue
                key = rn * (count[j] - 1)
                if bk is None or key < bk or (key == bk and i == bi and pos[j] < bp):
                    bk, bi, bp = key, i, pos[j]
            if bk == 0:
                break
        if bk is None:
            break
        i, j = bi, cols[bp]
        prow = rows[i]
        inv = prow[j] ** -1
        for k, r in enumerate(rows):
            if k == i or j not in r:
                continue
            lam = -mul(r[j], inv)
            for c, v in prow.items():
                put(r, c, addmul(r.get(c), lam, v))
        drop_row(i)
        cols.remove(j)
        del count[j]
    entries = [[r.get(j, ZERO) for j in cols] for r in rows]
    return _pm(rlab, [m.cols[j] for j in cols], entries)


# ---------------------------------------------------------------------------
# Alexander specialisation

def _flanking_regions(d: Diagram) -> tuple[int, int]:
    """Regions on either side of the lowest-numbered edge that has two distinct sides."""
    rm = d.region_map
    for e in sorted(d.edge_successor):
        c, s = d.tail(e)
        r1 = rm.corner_of[(c, s)]
        r2 = rm.corner_of[(c, (s - 1) % 4)]
        if r1 != r2:
            return tuple(sorted((r1, r2)))
    raise PreconditionViolated("no edge separates two distinct regions")


# x -> -t, y -> -1, so xy -> t
_ALEX_ROLE = {"a": ((0, 0), 1), "b": ((1, 0), -1), "c": ((1, 0), 1), "d": ((0, 0), -1)}


def _alexander_rows(d: Diagram) -> tuple[list[dict], list[int]]:
    drop = set(_flanking_regions(d))
    rows = []
    for c in range(d.n):
        acc: dict[int, dict] = {}
        for role, reg in corner_labels(d, c).items():
            if reg in drop:
                continue
            e, k = _ALEX_ROLE[role]
            t = acc.setdefault(reg, {})
            v = t.get(e, 0) + k
            if v:
                t[e] = v
            else:
                del t[e]
        rows.append({j: LaurentPoly._raw(t) for j, t in acc.items() if t})
    cols = [j for j in range(d.n + 2) if j not in drop]
    return rows, cols


def alexander_matrix(d: Diagram) -> list[list[LaurentPoly]]:
    """Relation matrix at x = -t, y = -1, minus the two flanking columns.

    Row by row this is Alexander's regional labelling 1, -t, t, -1 for the
    roles a, b, c, d.
    """
    rows, cols = _alexander_rows(d)
    return [[r.get(j, ZERO) for j in cols] for r in rows]


def alexander_polynomial(d: Diagram | Unknot0) -> LaurentPoly:
    """Classical Alexander polynomial in ``t`` (stored as the variable x).

    Normalised to lowest degree 0 and positive leading coefficient.
    """
    if isinstance(d, Unknot0):
        return ONE
    if d.components != 1:
        raise MultiComponent(f"{d.name or 'diagram'} has {d.components} components")
    rows, cols = _alexander_rows(d)
    return unit_normalize(det_sparse(rows, cols))[0]
