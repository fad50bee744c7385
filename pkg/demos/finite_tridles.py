"""
Finite tridles and their colorings
==================================

"""

import itertools

from tridle.catalog import catalog
from tridle.finite import (affine_tridle, check_r3, count_colorings, enumerate_tridles,
                           from_f4_table, linear_tridle)

# order two: only xor and its complement are solvable and compliant
for t in enumerate_tridles(2, "general"):
    print("order 2:", t.f4)

xor = from_f4_table(2, lambda a, b, c: a + b + c)
print("trefoil xor colorings:", count_colorings(catalog("trefoil-left"), None, xor))

# a + b + c over Z/3 is solvable but breaks R3
rep = check_r3(from_f4_table(3, lambda a, b, c: a + b + c))
print("Z/3 sum:", rep.r3_ok, "first failing equation", rep.equation, rep.counterexample)

# affine tables comply exactly when alpha*gamma = beta*delta
for al, be, ga, de in itertools.product((1, 2), repeat=4):
    ok = check_r3(affine_tridle(3, al, be, ga, de)).r3_ok
    print((al, be, ga, de), "complies" if ok else "fails")

# linear tridles at x*y = -1 see Fox colorings
for name in ("trefoil-left", "figure-eight", "5_1"):
    print(name, count_colorings(catalog(name), None, linear_tridle(5, 1, 4)))
