"""Framing arithmetic for one side: weights, track type, framing and slope."""

from tanglesurg import framing as fr

for n, s in [(4, 1), (8, 2), (6, 1), (10, 5)]:
    ctx = fr.FramingContext(n, s)
    cert = fr.framing_certificate(ctx)
    print(f"n={n} s={s}: weights {cert['weights']} track {cert['track_type']} theta {cert['theta']}")

# a side and its mirror glued together give slope 0; two equal sides give slope 3
for sigma2 in (1, -1):
    t1, t2 = fr.theta_side(4, 1, 1, 1), fr.theta_side(4, 1, 1, sigma2)
    sl = fr.boundary_slope(t1, t2, 4)
    print(f"theta {t1} + {t2}: slope {sl.p}/{sl.q} with {sl.m} boundary circles")

print("type (1)/(2) residue at n=10:", fr.type12_obstruction_residue(10))
print("mixed type residue at n=8:", fr.type34_mixed_residue(8))
