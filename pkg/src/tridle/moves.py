"""Reidemeister moves on PD codes, and a seeded random walk over them.

New crossings are built from a local compass picture: the four edge-ends
around the crossing are listed counterclockwise, each tagged with the strand
it belongs to and whether it points into the crossing.  The PD tuple and the
sign follow from that ring and from which strand is on top.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from collections.abc import Sequence
from typing import Iterator

from .diagram import (UNKNOT0, Diagram, PDCode, Unknot0, over_in_slot, over_out_slot,
                      renumber, validate)
from .errors import Disconnected, InvalidSite, TridleError

__all__ = ["MoveSite", "KINDS", "SiteList", "enumerate_sites", "apply", "fuzz",
           "FuzzStep", "fuzz_steps", "SOFT_CAP"]

KINDS = ("R1_add", "R1_remove", "R2_add", "R2_remove", "R3")
SHRINKING = ("R1_remove", "R2_remove", "R3")
SOFT_CAP = 12
R1_VARIANTS = ("left-under", "left-over", "right-under", "right-over")


@dataclass(frozen=True, order=True)
class MoveSite:
    """Where and how to apply a move.

    anchors: R1_add (edge,); R1_remove (crossing,); R2_add (face, edge1, edge2);
    R2_remove (crossing1, crossing2); R3 (face,).  On the crossingless unknot
    the single circle is edge 0 and the R2_add face is 0 as well.
    variant: R1_add kink side and whether the first pass goes over; R2_add
    "over" or "under" for edge1 relative to edge2.
    """

    kind: str
    anchors: tuple = ()
    variant: str = ""

    def to_document(self) -> dict:
        return {"kind": self.kind, "anchors": list(self.anchors), "variant": self.variant}

    @classmethod
    def from_document(cls, doc) -> "MoveSite":
        return cls(doc["kind"], tuple(doc.get("anchors", ())), doc.get("variant", ""))


# ---------------------------------------------------------------------------
# crossing construction

def _from_ring(ring, over):
    """PD tuple and sign from four counterclockwise (label, strand, incoming) ends."""
    ui = next(i for i, (_, s, inc) in enumerate(ring) if s != over and inc)
    oi = next(i for i, (_, s, inc) in enumerate(ring) if s == over and inc)
    sign = 1 if (oi - ui) % 4 == 3 else -1
    return tuple(ring[(ui + k) % 4][0] for k in range(4)), sign


def _from_strands(u_in, u_out, o_in, o_out, sign):
    if sign > 0:
        return (u_in, o_out, u_out, o_in)
    return (u_in, o_in, u_out, o_out)


def _finish(xs, signs, original_max, name) -> Diagram | Unknot0:
    if not xs:
        return UNKNOT0
    xs, signs = renumber(xs, signs, original_max)
    return validate(PDCode(xs), signs, name)


def _r1_ring(variant, e_in, loop, e_out):
    side, first = variant.split("-")
    if side == "left":
        # loop north of the edge: in from SW, out NE, back in NW, out SE
        ring = [(loop, 1, False), (loop, 2, True), (e_in, 1, True), (e_out, 2, False)]
    else:
        # loop south: in from NW, out SE, back in SW, out NE
        ring = [(e_out, 2, False), (e_in, 1, True), (loop, 2, True), (loop, 1, False)]
    return _from_ring(ring, 1 if first == "over" else 2)


def _r2_rings(e1_east, e2_west, w1, t, east1, w2, m, east2, e1_over):
    """Crossings P (west) and Q (east) of a finger of edge 1 pushed across edge 2.

    Edge 1 lies south of the face, edge 2 north; the finger rises from edge 1
    and crosses edge 2 twice.  Pieces: w1, t (tip), east1 of edge 1 and
    w2, m (middle), east2 of edge 2, west to east.
    """
    over = 1 if e1_over else 2
    # counterclockwise from east: E, N, W, S
    p = [(m, 2, e2_west), (t, 1, not e1_east), (w2, 2, not e2_west), (w1, 1, e1_east)]
    q = [(east2, 2, e2_west), (t, 1, e1_east), (m, 2, not e2_west), (east1, 1, not e1_east)]
    return _from_ring(p, over), _from_ring(q, over)


# ---------------------------------------------------------------------------
# site enumeration

def _monogon_crossings(d: Diagram) -> list[int]:
    return sorted({f[0][0] for f in d.region_map.regions if len(f) == 1})


def _bigon_faces(d: Diagram) -> Iterator[tuple[int, int, int]]:
    """(c1, c2, face) for bigons where one strand passes over at both corners."""
    for fid, f in enumerate(d.region_map.regions):
        if len(f) != 2:
            continue
        (c1, k1), (c2, k2) = f
        if c1 == c2:
            continue
        _, s1 = d.other_end(c1, k1)
        _, s2 = d.other_end(c2, k2)
        a_over = (k1 % 2, s1 % 2)
        b_over = (k2 % 2, s2 % 2)
        if a_over in ((1, 1), (0, 0)) and b_over in ((1, 1), (0, 0)) and a_over != b_over:
            yield (min(c1, c2), max(c1, c2), fid)


def _r3_faces(d: Diagram) -> Iterator[int]:
    for fid, f in enumerate(d.region_map.regions):
        if len(f) != 3 or len({c for c, _ in f}) != 3:
            continue
        over = [k % 2 for _, k in f]
        if len(set(over)) == 2:
            yield fid


def _face_edges(d: Diagram) -> list[list[int]]:
    x = d.crossings
    return [sorted(x[c][k] for c, k in f) for f in d.region_map.regions]


def _removal_ok(d: Diagram, site: MoveSite) -> bool:
    try:
        apply(d, site)
    except (InvalidSite, Disconnected):
        return False
    return True


class SiteList(Sequence):
    """Applicable sites in a fixed order, built on demand.

    Order: R1_remove, R2_remove, R3 (the shrinking block), then R1_add by
    edge and variant, then R2_add by (face, edge1 < edge2) and variant.
    """

    def __init__(self, d: Diagram | Unknot0):
        if isinstance(d, Unknot0):
            self._fixed = ([MoveSite("R1_add", (0,), v) for v in R1_VARIANTS]
                           + [MoveSite("R2_add", (0, 0, 0), v) for v in ("over", "under")])
            self.shrinking = 0
            self._edges = []
            self._faces = []
            self._offsets = []
            self._n2 = 0
            return
        fixed = [MoveSite("R1_remove", (c,)) for c in _monogon_crossings(d)]
        bigons = [MoveSite("R2_remove", cc) for cc in sorted({b[:2] for b in _bigon_faces(d)})]
        if d.components > 1:
            # a knot stays connected; a link may split or shed a circle
            bigons = [s for s in bigons if _removal_ok(d, s)]
        fixed += bigons
        fixed += [MoveSite("R3", (f,)) for f in _r3_faces(d)]
        self._fixed = fixed
        self.shrinking = len(fixed)
        self._edges = sorted(d._tails)
        self._faces = _face_edges(d)
        self._offsets = []
        total = 0
        for es in self._faces:
            self._offsets.append(total)
            total += len(es) * (len(es) - 1) // 2
        self._n2 = total

    def __len__(self):
        return len(self._fixed) + 4 * len(self._edges) + 2 * self._n2

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[k] for k in range(*i.indices(len(self)))]
        n = len(self)
        if i < 0:
            i += n
        if not 0 <= i < n:
            raise IndexError(i)
        if i < len(self._fixed):
            return self._fixed[i]
        i -= len(self._fixed)
        if i < 4 * len(self._edges):
            return MoveSite("R1_add", (self._edges[i // 4],), R1_VARIANTS[i % 4])
        i -= 4 * len(self._edges)
        pair, v = divmod(i, 2)
        lo, hi = 0, len(self._offsets) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self._offsets[mid] <= pair:
                lo = mid
            else:
                hi = mid - 1
        f = lo
        es = self._faces[f]
        k = pair - self._offsets[f]
        m = len(es)
        a = 0
        while k >= m - 1 - a:
            k -= m - 1 - a
            a += 1
        b = a + 1 + k
        return MoveSite("R2_add", (f, es[a], es[b]), ("over", "under")[v])


def enumerate_sites(d: Diagram | Unknot0) -> list[MoveSite]:
    """Every move applicable to ``d``, shrinking moves first."""
    return list(SiteList(d))


# ---------------------------------------------------------------------------
# surgery

def _merge(xs, groups):
    parent: dict[int, int] = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for g in groups:
        r = find(g[0])
        for a in g[1:]:
            ra = find(a)
            if ra != r:
                parent[ra] = r
    return [tuple(find(e) for e in x) for x in xs]


def _apply_r1_add(d, site):
    (e,), v = site.anchors, site.variant
    if v not in R1_VARIANTS:
        raise InvalidSite(f"unknown R1_add variant {v!r}")
    if isinstance(d, Unknot0):
        if e != 0:
            raise InvalidSite("the crossingless unknot has only edge 0")
        x, sg = _r1_ring(v, 1, 2, 1)
        return _finish([x], [sg], 2, "")
    if e not in d._tails:
        raise InvalidSite(f"no edge {e}")
    top = 2 * d.n
    loop, e_out = top + 1, top + 2
    xs = [list(x) for x in d.crossings]
    hc, hs = d.head(e)
    xs[hc][hs] = e_out
    x, sg = _r1_ring(v, e, loop, e_out)
    return _finish([tuple(t) for t in xs] + [x], list(d.signs) + [sg], top, d.name)


def _apply_r1_remove(d, site):
    (c,) = site.anchors
    if isinstance(d, Unknot0) or c not in _monogon_crossings(d):
        raise InvalidSite(f"crossing {c} does not bound a monogon")
    x = d.crossings[c]
    loop = next(x[k] for k in range(4) if x[k] == x[(k + 1) % 4])
    ends = [e for e in x if e != loop]
    if d.n == 1:
        return UNKNOT0
    xs = [t for i, t in enumerate(d.crossings) if i != c]
    signs = [s for i, s in enumerate(d.signs) if i != c]
    # the strand enters on one end and leaves on the other
    e_in = next(e for e in ends if d.head(e)[0] == c)
    e_out = next(e for e in ends if d.tail(e)[0] == c)
    xs = _merge(xs, [(e_in, e_out)])
    return _finish(xs, signs, 2 * d.n, d.name)


def _apply_r2_add(d, site):
    f, a1, a2 = site.anchors
    if site.variant not in ("over", "under"):
        raise InvalidSite(f"unknown R2_add variant {site.variant!r}")
    e1_over = site.variant == "over"
    if isinstance(d, Unknot0):
        if site.anchors != (0, 0, 0):
            raise InvalidSite("the crossingless unknot has the single site (0, 0, 0)")
        # circle run counterclockwise: west arc 1, tip 2, east arc 3, middle 4
        (p, sp), (q, sq) = _r2_rings(True, True, 1, 2, 3, 1, 4, 3, e1_over)
        return _finish([p, q], [sp, sq], 4, "")
    rm = d.region_map
    if not 0 <= f < len(rm.regions):
        raise InvalidSite(f"no face {f}")
    corners = rm.regions[f]
    x = d.crossings
    pos = {x[c][k]: (c, k) for c, k in corners}
    if a1 == a2 or a1 not in pos or a2 not in pos:
        raise InvalidSite(f"edges {a1}, {a2} are not two sides of face {f}")
    c1, k1 = pos[a1]
    c2, k2 = pos[a2]
    e1_east = d.is_outgoing(c1, k1)
    e2_west = d.is_outgoing(c2, k2)
    top = 2 * d.n
    t, m = top + 1, top + 2
    h1, h2 = top + 3, top + 4
    # the tail piece of each edge keeps its label, the head piece is fresh
    w1, east1 = (a1, h1) if e1_east else (h1, a1)
    east2, w2 = (a2, h2) if e2_west else (h2, a2)
    xs = [list(y) for y in x]
    hc, hs = d.head(a1)
    xs[hc][hs] = h1
    hc, hs = d.head(a2)
    xs[hc][hs] = h2
    (p, sp), (q, sq) = _r2_rings(e1_east, e2_west, w1, t, east1, w2, m, east2, e1_over)
    return _finish([tuple(y) for y in xs] + [p, q], list(d.signs) + [sp, sq], top, d.name)


def _apply_r2_remove(d, site):
    if isinstance(d, Unknot0) or len(site.anchors) != 2:
        raise InvalidSite("no such bigon")
    c1, c2 = site.anchors
    face = next((f for a, b, f in _bigon_faces(d) if (a, b) == (c1, c2)), None)
    if face is None:
        raise InvalidSite(f"crossings {c1}, {c2} do not bound a removable bigon")
    x = d.crossings
    groups = []
    for c, k in d.region_map.regions[face]:
        # in-edge, bigon edge, out-edge of the strand along this side
        g = x[c][k]
        tc, ts = d.tail(g)
        hc, hs = d.head(g)
        groups.append((x[tc][(ts + 2) % 4], g, x[hc][(hs + 2) % 4]))
    rest = [i for i in range(d.n) if i not in (c1, c2)]
    if not rest:
        if d.components != 1:
            raise InvalidSite("removal would leave a split unlink")
        return UNKNOT0
    xs = _merge([x[i] for i in rest] + [tuple(g) for g in groups], groups)
    xs, probes = xs[:-len(groups)], xs[-len(groups):]
    live = {e for y in xs for e in y}
    if any(g[0] not in live for g in probes):
        raise InvalidSite("removal would leave a crossingless component")
    return _finish(xs, [d.signs[i] for i in rest], 2 * d.n, d.name)


def _apply_r3(d, site):
    (f,) = site.anchors
    if isinstance(d, Unknot0) or f not in set(_r3_faces(d)):
        raise InvalidSite(f"face {f} is not an R3 triangle")
    x = d.crossings
    tri = d.region_map.regions[f]
    cs = [c for c, _ in tri]
    # strand i holds edge e[i] = x[c_i][k_i] from c_i to c_{i+1}, p[i] beyond c_i, q[i] beyond c_{i+1}
    e, p, q, fwd, over_at = [], [], [], [], []
    for i, (c, k) in enumerate(tri):
        cn, kn = tri[(i + 1) % 3]
        e.append(x[c][k])
        p.append(x[c][(k + 2) % 4])
        q.append(x[cn][(kn + 3) % 4])
        fwd.append(d.is_outgoing(c, k))
        over_at.append(k % 2 == 1)
    xs = [list(y) for y in x]
    for i in range(3):
        c = cs[i]
        j = (i - 1) % 3
        # new c_i: strand i between e[i] and q[i]; strand j between p[j] and e[j]
        si = (e[i], q[i]) if fwd[i] else (q[i], e[i])
        sj = (p[j], e[j]) if fwd[j] else (e[j], p[j])
        if over_at[i]:
            xs[c] = list(_from_strands(sj[0], sj[1], si[0], si[1], d.signs[c]))
        else:
            xs[c] = list(_from_strands(si[0], si[1], sj[0], sj[1], d.signs[c]))
    return _finish([tuple(y) for y in xs], list(d.signs), 2 * d.n, d.name)


_APPLY = {
    "R1_add": _apply_r1_add,
    "R1_remove": _apply_r1_remove,
    "R2_add": _apply_r2_add,
    "R2_remove": _apply_r2_remove,
    "R3": _apply_r3,
}


def apply(d: Diagram | Unknot0, site: MoveSite) -> Diagram | Unknot0:
    """Perform the move; the result is renumbered and revalidated.

    Raises InvalidSite when the site does not describe a legal move on ``d``.
    """
    fn = _APPLY.get(site.kind)
    if fn is None:
        raise InvalidSite(f"unknown move kind {site.kind!r}")
    try:
        return fn(d, site)
    except (InvalidSite, Disconnected):
        raise
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise InvalidSite(f"{site.kind} at {site.anchors}: {exc}") from None


# ---------------------------------------------------------------------------
# fuzzing

@dataclass(frozen=True)
class FuzzStep:
    diagram: Diagram | Unknot0
    move: MoveSite | None = field(default=None)


def fuzz_steps(d: Diagram | Unknot0, seed: int, length: int,
               soft_cap: int = SOFT_CAP) -> list[FuzzStep]:
    """Seeded walk of ``length`` moves; the first step is ``d`` itself.

    Sites are drawn uniformly.  Once the diagram has ``soft_cap`` crossings or
    more, only R1_remove, R2_remove and R3 are eligible (falling back to all
    sites if none of those apply).
    """
    if length < 0:
        raise ValueError("length must be non-negative")
    rng = random.Random(seed)
    out = [FuzzStep(d)]
    cur = d
    for _ in range(length):
        sites = SiteList(cur)
        if cur.n >= soft_cap and sites.shrinking:
            sites = sites[:sites.shrinking]
        site = rng.choice(sites)
        cur = apply(cur, site)
        out.append(FuzzStep(cur, site))
    return out


def fuzz(d: Diagram | Unknot0, seed: int, length: int,
         soft_cap: int = SOFT_CAP) -> list[Diagram | Unknot0]:
    """The ``length + 1`` diagrams of a seeded random move sequence."""
    return [s.diagram for s in fuzz_steps(d, seed, length, soft_cap)]
