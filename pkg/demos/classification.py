"""Full case enumeration with certificates, and their independent re-check."""

from collections import Counter

from tanglesurg import classifier as cl

for n in (4, 6, 8):
    results, rejected = cl.run_classification(n)
    print(f"n={n}: {len(results)} survivors, {len(rejected)} rejected branches")
    for reason, count in Counter(r["reason"] for r in rejected).most_common():
        print(f"    {count:5}  {reason}")
    for r in results:
        print(f"    {r.knot_id} slope {r.slope.p}  verified {cl.verify_certificate(r)}")
