"""
Is Delta always a polynomial in xy?
===================================

"""

from tridle.catalog import catalog, knot_names
from tridle.delta import delta
from tridle.matrix import alexander_polynomial

# every knot up to eight crossings; the last column compares with Alexander(t = xy)
for name in knot_names():
    d = catalog(name)
    r = delta(d, reduce=True)
    a = alexander_polynomial(d)
    same = r.delta == type(a)({(l, l): c for (l, _), c in a.items()})
    form = "-" if r.xy_form is None else r.xy_form.to_string(("t", "_"))
    print(f"{name:14s} {form:32s} {'= Alexander' if same else ''}")
