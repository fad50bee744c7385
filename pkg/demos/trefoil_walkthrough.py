"""
The trefoil, from PD code to Delta
==================================

"""

from tridle.diagram import load_diagram
from tridle.delta import delta, maximal_minors
from tridle.matrix import alexander_polynomial, build_matrix, simplify

# a PD code lists each crossing counterclockwise from the incoming under-strand
d = load_diagram("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)")
print(d)
print("regions:", len(d.region_map.regions))

# one row per crossing, one column per region; each row reads a + bx + cxy + dy
m = build_matrix(d)
print(m.to_text())

# Delta is the gcd of the ten 3x3 minors
for minor in maximal_minors(m):
    print("  minor:", minor)
r = delta(d)
print("Delta =", r.delta, "  in t = xy:", r.xy_form.to_string(("t", "_")))

# simplify shrinks the matrix without changing the gcd
small = simplify(m)
print(small.to_text())

# setting t = xy recovers the Alexander polynomial
print("Alexander:", alexander_polynomial(d).to_string(("t", "_")))
