"""Oriented planar link diagrams from PD codes.

PD convention: each crossing is a 4-tuple of edge labels listed
counterclockwise, starting with the incoming under-strand.  The under-strand
leaves through position 2; the over-strand occupies positions 1 and 3.

A *corner* ``(c, k)`` of crossing ``c`` is the angle between tuple positions
``k`` and ``k + 1``.  Regions (faces) are cycles of corners.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityError,
    Disconnected,
    EdgeCountError,
    NonPlanar,
    OrientationAmbiguous,
    OrientationConflict,
    PDSyntaxError,
    SignConflict,
)

__all__ = [
    "PDCode", "Diagram", "Unknot0", "UNKNOT0", "RegionMap",
    "parse_pd", "load_diagram", "validate", "regions", "crossing_sign",
    "corner_labels", "role_assignment", "mirror", "reverse", "renumber",
    "canonical_key", "over_in_slot", "over_out_slot", "ROLES",
]

ROLES = ("a", "b", "c", "d")

# role -> corner slot, per crossing sign
_ROLE_CORNER = {
    1: {"d": 0, "a": 1, "b": 2, "c": 3},
    -1: {"a": 0, "d": 1, "c": 2, "b": 3},
}


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise ArityError(f"crossing {tuple(x)} has {len(x)} entries, expected 4")
            for e in x:
                counts[e] = counts.get(e, 0) + 1
        bad = sorted(e for e, k in counts.items() if k != 2)
        if bad:
            raise EdgeCountError(
                f"edge label(s) {bad} must appear exactly twice "
                f"(seen {[counts[e] for e in bad]})"
            )

    @property
    def labels(self) -> list[int]:
        return sorted({e for x in self.crossings for e in x})

    def __str__(self):
        return " ".join("X(" + ",".join(map(str, x)) + ")" for x in self.crossings)


_X_TERM = re.compile(r"X\s*[\(\[]\s*([^\)\]]*)[\)\]]")


def parse_pd(source) -> PDCode:
    """Read a PD code from text, a JSON document, or a nested sequence.

    Text uses whitespace separated ``X(i,j,k,l)`` terms (``X[...]`` and an
    enclosing ``PD[...]`` are tolerated).
    """
    if isinstance(source, Mapping):
        if "pd" not in source:
            raise PDSyntaxError("diagram document lacks a 'pd' field")
        return parse_pd(source["pd"])
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{") or text.startswith("[["):
            try:
                return parse_pd(json.loads(text))
            except json.JSONDecodeError as exc:
                raise PDSyntaxError(f"invalid JSON: {exc}") from None
        body = text
        if body.startswith("PD"):
            body = body[2:].strip()
            if body[:1] in "[(" and body[-1:] in "])":
                body = body[1:-1]
        terms = _X_TERM.findall(body)
        leftover = _X_TERM.sub("", body).replace(",", " ").strip()
        if leftover or (not terms and body):
            raise PDSyntaxError(f"cannot parse PD text near {leftover or body!r}")
        out = []
        for t in terms:
            parts = [p.strip() for p in t.split(",") if p.strip()]
            try:
                out.append(tuple(int(p) for p in parts))
            except ValueError:
                raise PDSyntaxError(f"non-integer edge label in X({t})") from None
        return PDCode(tuple(out))
    try:
        rows = [tuple(int(v) for v in row) for row in source]
    except (TypeError, ValueError):
        raise PDSyntaxError("PD must be a sequence of integer 4-sequences") from None
    return PDCode(tuple(rows))


def over_in_slot(sign: int) -> int:
    return 3 if sign > 0 else 1


def over_out_slot(sign: int) -> int:
    return 1 if sign > 0 else 3


@dataclass(frozen=True, eq=False)
class Diagram:
    """A validated, connected, oriented planar diagram.

    Build instances with :func:`validate`; the derived tables below assume
    the checks made there.
    """

    pd: PDCode
    signs: tuple[int, ...]
    name: str = ""
    components: int = 1
    _tails: Mapping = field(default=None, repr=False, compare=False)
    _heads: Mapping = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.pd.crossings)

    @property
    def crossings(self):
        return self.pd.crossings

    connected = True

    def position(self, c: int, s: int) -> int:
        return self.pd.crossings[c][s]

    def tail(self, e: int) -> tuple[int, int]:
        """(crossing, slot) where edge ``e`` leaves a crossing."""
        return self._tails[e]

    def head(self, e: int) -> tuple[int, int]:
        """(crossing, slot) where edge ``e`` enters a crossing."""
        return self._heads[e]

    def other_end(self, c: int, s: int) -> tuple[int, int]:
        e = self.pd.crossings[c][s]
        t = self._tails[e]
        return self._heads[e] if t == (c, s) else t

    def is_outgoing(self, c: int, s: int) -> bool:
        return self._tails[self.pd.crossings[c][s]] == (c, s)

    @cached_property
    def edge_successor(self) -> dict[int, int]:
        out = {}
        for e, (c, s) in self._heads.items():
            out[e] = self.pd.crossings[c][(s + 2) % 4]
        return out

    @cached_property
    def component_edges(self) -> list[list[int]]:
        """Edge cycles in orientation order, each starting at its smallest label."""
        succ = self.edge_successor
        seen = set()
        comps = []
        for e in sorted(succ):
            if e in seen:
                continue
            cyc = [e]
            seen.add(e)
            f = succ[e]
            while f != e:
                cyc.append(f)
                seen.add(f)
                f = succ[f]
            comps.append(cyc)
        return comps

    @cached_property
    def region_map(self) -> "RegionMap":
        return _faces(self)

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.pd == other.pd and self.signs == other.signs

    def __hash__(self):
        return hash((self.pd, self.signs))

    def to_document(self) -> dict:
        doc = {"name": self.name, "pd": [list(x) for x in self.pd.crossings],
               "signs": list(self.signs), "components": self.components}
        return doc

    def __repr__(self):
        return f"Diagram({self.name or str(self.pd)!r}, n={self.n}, components={self.components})"


class Unknot0:
    """The crossingless unknot; it has no PD code."""

    n = 0
    components = 1
    connected = True
    signs = ()
    name = "unknot-0"
    pd = PDCode(())

    def __repr__(self):
        return "Unknot0()"

    def to_document(self) -> dict:
        return {"name": self.name, "pd": [], "signs": [], "components": 1}

    def __eq__(self, other):
        return isinstance(other, Unknot0)

    def __hash__(self):
        return hash("unknot-0")


UNKNOT0 = Unknot0()


@dataclass(frozen=True)
class RegionMap:
    """Faces of the diagram.

    ``regions[i]`` is the cyclic corner sequence of face ``i``; faces are
    numbered by their smallest corner.
    """

    regions: tuple[tuple[tuple[int, int], ...], ...]
    corner_of: Mapping[tuple[int, int], int]

    def __len__(self):
        return len(self.regions)


def _faces(d: Diagram) -> RegionMap:
    corner_of: dict[tuple[int, int], int] = {}
    faces = []
    for c in range(d.n):
        for k in range(4):
            if (c, k) in corner_of:
                continue
            fid = len(faces)
            cyc = []
            cur = (c, k)
            while cur not in corner_of:
                corner_of[cur] = fid
                cyc.append(cur)
                oc, os_ = d.other_end(*cur)
                cur = (oc, (os_ - 1) % 4)
            if cur != (c, k):
                raise NonPlanar("corner traversal did not close")
            faces.append(tuple(cyc))
    return RegionMap(tuple(faces), corner_of)


def _edge_slots(crossings) -> dict[int, list[tuple[int, int]]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(crossings):
        for s, e in enumerate(x):
            where.setdefault(e, []).append((c, s))
    return where


def _infer_signs(crossings, where) -> list[int | None]:
    """Propagate orientation from under-strands along each component."""
    n = len(crossings)
    signs: list[int | None] = [None] * n
    # which (c, s) positions are known incoming
    incoming: dict[tuple[int, int], bool] = {}

    def other(c, s):
        a, b = where[crossings[c][s]]
        return b if a == (c, s) else a

    def walk(c, s):
        # (c, s) is incoming; follow the component until we come back
        start = (c, s)
        while True:
            if (c, s) in incoming:
                if not incoming[(c, s)]:
                    raise OrientationConflict(
                        f"edge {crossings[c][s]} is oriented both ways")
                if (c, s) != start:
                    return
            incoming[(c, s)] = True
            out = (c, (s + 2) % 4)
            if incoming.get(out) is True:
                raise OrientationConflict(f"crossing {c} strand entered from both ends")
            incoming[out] = False
            if s == 2:
                raise OrientationConflict(
                    f"under-strand of crossing {c} would run backwards")
            if s in (1, 3):
                sg = 1 if s == 3 else -1
                if signs[c] is not None and signs[c] != sg:
                    raise OrientationConflict(f"crossing {c} over-strand direction conflict")
                signs[c] = sg
            nc, ns = other(*out)
            if incoming.get((nc, ns)) is False:
                raise OrientationConflict(f"edge {crossings[c][out[1]]} is oriented both ways")
            c, s = nc, ns
            if (c, s) == start:
                return

    for c in range(n):
        if (c, 0) not in incoming:
            walk(c, 0)
    return signs


def _label_rule_sign(crossings, where, c) -> int | None:
    """Over-strand direction from consecutive labelling of its component."""
    # component edge set through the over strand of c
    comp = set()
    stack = [(c, 1)]
    seen = set()
    while stack:
        pc, ps = stack.pop()
        if (pc, ps) in seen:
            continue
        seen.add((pc, ps))
        seen.add((pc, (ps + 2) % 4))
        for q in ((pc, ps), (pc, (ps + 2) % 4)):
            e = crossings[q[0]][q[1]]
            comp.add(e)
            for r in where[e]:
                if r not in seen:
                    stack.append(r)
    labels = sorted(comp)
    if len(labels) <= 2 or labels[-1] - labels[0] != len(labels) - 1:
        return None
    lo, hi = labels[0], labels[-1]

    def succ(e):
        return lo if e == hi else e + 1

    l1, l3 = crossings[c][1], crossings[c][3]
    if succ(l3) == l1:
        return 1
    if succ(l1) == l3:
        return -1
    return None


def validate(pd: PDCode | Sequence, sign_override: Sequence[int] | None = None,
             name: str = "") -> Diagram:
    """Check a PD code and build the oriented :class:`Diagram`.

    Raises NonPlanar, Disconnected, OrientationAmbiguous, OrientationConflict
    or SignConflict.
    """
    if not isinstance(pd, PDCode):
        pd = parse_pd(pd)
    crossings = pd.crossings
    n = len(crossings)
    if n == 0:
        raise Disconnected("empty PD code; use the unknot-0 catalog entry")
    where = _edge_slots(crossings)

    # connectivity of the 4-valent graph
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (c1, _), (c2, _) in where.values():
        parent[find(c1)] = find(c2)
    if len({find(i) for i in range(n)}) > 1:
        raise Disconnected("diagram is split")

    inferred = _infer_signs(crossings, where)
    signs = list(inferred)
    if sign_override is not None:
        if len(sign_override) != n:
            raise SignConflict(f"{len(sign_override)} signs given for {n} crossings")
        for c, s in enumerate(sign_override):
            if s not in (1, -1):
                raise SignConflict(f"sign {s!r} is not ±1")
            if inferred[c] is not None and inferred[c] != s:
                raise SignConflict(
                    f"crossing {c}: override {s:+d} contradicts inferred {inferred[c]:+d}")
            signs[c] = s
    for c in range(n):
        if signs[c] is None:
            signs[c] = _label_rule_sign(crossings, where, c)
            if signs[c] is None:
                raise OrientationAmbiguous(
                    f"over-strand direction at crossing {c} cannot be inferred; "
                    "supply signs")

    tails: dict[int, tuple[int, int]] = {}
    heads: dict[int, tuple[int, int]] = {}
    for c, x in enumerate(crossings):
        sg = signs[c]
        for s in (2, over_out_slot(sg)):
            e = x[s]
            if e in tails:
                raise OrientationConflict(f"edge {e} leaves two crossings")
            tails[e] = (c, s)
        for s in (0, over_in_slot(sg)):
            e = x[s]
            if e in heads:
                raise OrientationConflict(f"edge {e} enters two crossings")
            heads[e] = (c, s)

    d = Diagram(pd, tuple(signs), name, 0, tails, heads)
    object.__setattr__(d, "components", len(d.component_edges))
    nf = len(d.region_map.regions)
    if nf != n + 2:
        raise NonPlanar(f"{nf} faces for {n} crossings (planar needs {n + 2})")
    return d


def load_diagram(source, name: str | None = None) -> Diagram | Unknot0:
    """Build a diagram from a JSON document, JSON text or PD text."""
    doc = source
    if isinstance(source, str):
        text = source.strip()
        if text.startswith("{"):
            try:
                doc = json.loads(text)
            except json.JSONDecodeError as exc:
                raise PDSyntaxError(f"invalid JSON: {exc}") from None
    if isinstance(doc, Mapping):
        pd = parse_pd(doc)
        nm = name if name is not None else doc.get("name", "")
        if not pd.crossings:
            return UNKNOT0
        d = validate(pd, doc.get("signs"), nm)
        comps = doc.get("components")
        if comps is not None and comps != d.components:
            raise SignConflict(f"document claims {comps} components, found {d.components}")
        return d
    pd = parse_pd(doc)
    if not pd.crossings:
        return UNKNOT0
    return validate(pd, None, name or "")


def regions(d: Diagram | Unknot0) -> RegionMap:
    if isinstance(d, Unknot0):
        return RegionMap((), {})
    return d.region_map


def crossing_sign(d: Diagram, c: int) -> int:
    return d.signs[c]


def corner_labels(d: Diagram, c: int) -> dict[str, int]:
    """Map the roles a, b, c, d at crossing ``c`` to region ids.

    a: left of over, right of under;  b: left of both;
    c: right of over, left of under;  d: right of both.
    """
    rm = d.region_map
    slots = _ROLE_CORNER[d.signs[c]]
    return {r: rm.corner_of[(c, slots[r])] for r in ROLES}


def role_slots(sign: int) -> dict[str, int]:
    return dict(_ROLE_CORNER[sign])


def role_assignment(d: Diagram) -> list[dict[str, int]]:
    return [corner_labels(d, c) for c in range(d.n)]


# ---------------------------------------------------------------------------
# relabelling and symmetries

def renumber(crossings: Sequence[Sequence[int]], signs: Sequence[int],
             original_max: int | None = None) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Relabel edges 1..2n, each component a consecutive run in orientation order.

    Components are ordered, and each starts, at its smallest label not larger
    than ``original_max`` (labels above it count as freshly allocated).
    """
    where = _edge_slots(crossings)
    tails = {}
    heads = {}
    for c, x in enumerate(crossings):
        tails[x[2]] = (c, 2)
        tails[x[over_out_slot(signs[c])]] = (c, over_out_slot(signs[c]))
        heads[x[0]] = (c, 0)
        heads[x[over_in_slot(signs[c])]] = (c, over_in_slot(signs[c]))
    succ = {e: crossings[c][(s + 2) % 4] for e, (c, s) in heads.items()}
    cap = original_max if original_max is not None else max(where)

    seen = set()
    comps = []
    for e in sorted(where):
        if e in seen:
            continue
        cyc = [e]
        seen.add(e)
        f = succ[e]
        while f != e:
            cyc.append(f)
            seen.add(f)
            f = succ[f]
        orig = [g for g in cyc if g <= cap]
        key = min(orig) if orig else min(cyc) + cap
        i = cyc.index(min(orig) if orig else min(cyc))
        comps.append((key, cyc[i:] + cyc[:i]))
    comps.sort()
    new = {}
    for _, cyc in comps:
        for g in cyc:
            new[g] = len(new) + 1
    return tuple(tuple(new[e] for e in x) for x in crossings), tuple(signs)


def mirror(d: Diagram | Unknot0) -> Diagram | Unknot0:
    """Swap over and under at every crossing; every sign flips."""
    if isinstance(d, Unknot0):
        return d
    xs = []
    for x, sg in zip(d.crossings, d.signs):
        k = over_in_slot(sg)
        xs.append(tuple(x[(k + i) % 4] for i in range(4)))
    return validate(PDCode(tuple(xs)), [-s for s in d.signs], _suffix(d.name, "mirror"))


def reverse(d: Diagram | Unknot0) -> Diagram | Unknot0:
    """Reverse the orientation of every component."""
    if isinstance(d, Unknot0):
        return d
    xs = [tuple(x[(2 + i) % 4] for i in range(4)) for x in d.crossings]
    return validate(PDCode(tuple(xs)), list(d.signs), _suffix(d.name, "reverse"))


def _suffix(name: str, tag: str) -> str:
    if not name:
        return ""
    if name.endswith("~" + tag):
        return name[: -len(tag) - 1]
    return f"{name}~{tag}"


def canonical_key(d: Diagram | Unknot0) -> tuple:
    """Label-independent key; equal keys iff the oriented diagrams are isomorphic."""
    if isinstance(d, Unknot0):
        return ()
    best = None
    succ = d.edge_successor
    for start in succ:
        new: dict[int, int] = {}
        queue = [start]
        while queue:
            e0 = queue.pop(0)
            if e0 in new:
                continue
            e = e0
            run = []
            while e not in new:
                new[e] = len(new) + 1
                run.append(e)
                e = succ[e]
            for e in run:
                c, s = d.head(e)
                x = d.crossings[c]
                for t in (1, 2, 3):
                    f = x[(s + t) % 4]
                    if f not in new:
                        queue.append(f)
        key = tuple(sorted(
            (tuple(new[e] for e in x), sg) for x, sg in zip(d.crossings, d.signs)))
        if best is None or key < best:
            best = key
    return best


def diagrams_isomorphic(d1, d2) -> bool:
    return canonical_key(d1) == canonical_key(d2)
