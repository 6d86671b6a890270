"""Rational tangles: continued fractions, closures and the q-parity rule."""

from tanglesurg import diagram as dg
from tanglesurg.tangle import Slope, continued_fraction, numerator_closure, rational_tangle

print("slope   terms        crossings  closure components")
for text in ["1/3", "-1/2", "2/5", "3/7", "5/8"]:
    s = Slope.parse(text)
    td = rational_tangle(s)
    comps = dg.trace_components(numerator_closure(td)).count
    print(f"{text:6}  {str(continued_fraction(s)):12} {len(td.crossings):9}  {comps}")

# the closure is a knot exactly when the denominator is odd
td = rational_tangle(Slope(1, 3))
od = dg.orient(numerator_closure(td))
print("closure of T(1/3): writhe", dg.writhe(od), "Jones", dg.jones(od))
