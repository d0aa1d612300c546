"""Degree formulas verified by scaling experiments.

The certificate is multihomogeneous: scaling A_i by c multiplies P-hat by
c^{d_i} with d_i = C(n,2) C(n-2, k_i - 1) prod_{j != i} C(n, k_j).  The
script prints the predicted degrees and the empirically fitted exponents.
"""

import math

import numpy as np

from tuplevar import (
    Partition,
    certificate_degree,
    random_tuple,
    reduced_certificate,
)

for k in [(1, 1), (1, 2), (1, 1, 1), (2, 2), (1, 3)]:
    p = Partition(sum(k), k)
    t = random_tuple(p, seed=1)
    base = reduced_certificate(t).value
    print(f"\npartition k={p.k}: predicted degrees {[certificate_degree(p, i) for i in range(p.l)]}, total {certificate_degree(p)}")
    for i in range(p.l):
        c = 1.7
        scaled = reduced_certificate(t.scaled(i, c)).value
        fitted = (scaled.log_mag - base.log_mag) / math.log(c)
        print(f"  matrix {i}: fitted exponent {fitted:14.8f}  (predicted {certificate_degree(p, i)})")

# total degree identity on the all-ones partition: n^n * C(n,2)
print("\nall-ones partitions, total degree n^n C(n,2):")
for n in (2, 3, 4):
    p = Partition(n, (1,) * n)
    print(f"  n={n}: {certificate_degree(p)} = {n}^{n} * {math.comb(n, 2)}")
