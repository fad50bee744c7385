"""Built-in named diagrams.

The prime knots 3_1 ... 8_21 are minimal-crossing diagrams stored in
``data/catalog.json`` (regenerate with ``tools/gen_catalog.py``).
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Sequence

from .diagram import UNKNOT0, Diagram, PDCode, Unknot0, mirror, renumber, validate
from .errors import Disconnected, UnknownCatalogEntry

__all__ = ["braid_closure", "catalog", "catalog_names", "knot_names", "self_test"]


def braid_closure(word: Sequence[int], strands: int | None = None, name: str = "") -> Diagram:
    """Closure of a braid given as signed generator indices (1 = sigma_1).

    Strands run upward; sigma_i crosses positions i and i+1 and is a
    positive crossing for positive i.
    """
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    xs, signs = [], []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        a, b = cur[i], cur[i + 1]
        c, d = nxt, nxt + 1
        nxt += 2
        if g > 0:
            xs.append((b, d, c, a))
            signs.append(1)
        else:
            xs.append((a, b, d, c))
            signs.append(-1)
        cur[i], cur[i + 1] = c, d
    # close each position's top end onto its bottom end
    alias = {top: bot for top, bot in zip(cur, range(1, strands + 1)) if top != bot}
    xs = [tuple(alias.get(e, e) for e in x) for x in xs]
    if not xs:
        raise Disconnected("empty braid word")
    xs, signs = renumber(xs, signs)
    return validate(PDCode(xs), signs, name)


@lru_cache(maxsize=1)
def _data() -> dict:
    text = resources.files(__package__).joinpath("data/catalog.json").read_text()
    return {e["name"]: e for e in json.loads(text)["diagrams"]}


def _build(name: str) -> Diagram | Unknot0:
    if name == "unknot-0":
        return UNKNOT0
    if name == "unknot-2":
        from .moves import MoveSite, apply
        d = apply(UNKNOT0, MoveSite("R2_add", (0, 0, 0), "over"))
        return Diagram(d.pd, d.signs, name, d.components, d._tails, d._heads)
    if name == "trefoil-right":
        d = mirror(_build("trefoil-left"))
        return Diagram(d.pd, d.signs, name, d.components, d._tails, d._heads)
    e = _data().get(name)
    if e is None:
        raise UnknownCatalogEntry(name)
    return validate(PDCode(tuple(tuple(x) for x in e["pd"])), e.get("signs"), name)


_cache: dict[str, Diagram | Unknot0] = {}


def catalog(name: str) -> Diagram | Unknot0:
    """The validated built-in diagram called ``name``."""
    d = _cache.get(name)
    if d is None:
        d = _cache[name] = _build(name)
    return d


_FIRST = ["unknot-0", "unknot-1", "unknot-2", "trefoil-left", "trefoil-right",
          "figure-eight", "hopf"]


def catalog_names() -> list[str]:
    """Special diagrams first, then the knot table in order."""
    table = [nm for nm in _data() if nm not in _FIRST]
    table.sort(key=lambda nm: tuple(int(p) for p in nm.split("_")))
    return _FIRST + table


def knot_names() -> list[str]:
    """Catalog entries that are knots with at least one crossing."""
    return [nm for nm in catalog_names()
            if catalog(nm).components == 1 and catalog(nm).n > 0]


def self_test() -> list[str]:
    """Validate every entry; returns the names checked."""
    names = catalog_names()
    for nm in names:
        _cache.pop(nm, None)
        catalog(nm)
    return names
