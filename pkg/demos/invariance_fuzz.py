"""
Random Reidemeister walks keep Delta fixed
==========================================

"""

from tridle.catalog import catalog
from tridle.delta import colorings_mod_p, delta
from tridle.moves import fuzz_steps

start = catalog("figure-eight")

# a seeded walk of twelve moves; the diagram grows and shrinks along the way
for step in fuzz_steps(start, seed=3, length=12):
    d = step.diagram
    move = "start" if step.move is None else step.move.kind
    print(f"{move:10s} n={d.n:2d}  Delta={delta(d, reduce=True).delta}"
          f"  colorings mod 5 at (1,4): {colorings_mod_p(d, 5, 1, 4)}")
