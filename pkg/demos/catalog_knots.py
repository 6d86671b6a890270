"""The three knots built from two copies of T(1/3,-1/2;4) glued by eta."""

import time

from tanglesurg import classifier as cl
from tanglesurg import diagram as dg

entries = cl.build_catalog()
for e in entries:
    print(f"{e.id}: {e.side1} | {e.side2}")
    print(f"    crossings {len(e.pd.crossings)}, components {dg.trace_components(e.pd).count}")
    print(f"    epsilon per side {cl.epsilon_of(e.pd, 1)}, {cl.epsilon_of(e.pd, 2)}")

start = time.perf_counter()
j1 = dg.jones(dg.orient(entries[0].pd))
j3 = dg.jones(dg.orient(entries[2].pd))
print(f"\nJones of K1 ({time.perf_counter() - start:.1f}s for both state sums):\n    {j1}")
print("K3 is the mirror of K1:", j3 == j1.invert_variable())
