"""Engineered spectral collisions and the kernel deficiency they cause.

Eigenvalues are signed powers of two with exactly one subset-sum collision
planted, so exactly one charged collision factor vanishes -- and the Krylov
matrix loses rank by exactly the predicted exponent.
"""

import numpy as np

from tuplevar import (
    Partition,
    SubPartition,
    collision_eigenvalues,
    determinant_covector,
    exponent,
    kronecker_sum,
    single_collision_tuple,
    verify_unique_collision,
)
from tuplevar.certifier import krylov_matrix
from tuplevar.numerics import numerical_rank

vals = collision_eigenvalues(2, 6)
s1, s2 = verify_unique_collision(vals, 2)
print(f"eigenvalue pool {vals}")
print(f"unique equal-sum disjoint pair: indices {s1} and {s2} "
      f"(sums {sum(vals[i] for i in s1)} = {sum(vals[i] for i in s2)})")

for k, kprime in [((1, 1), (1, 1)), ((1, 2), (1, 1)), ((2, 2), (1, 1))]:
    p = Partition(sum(k), k)
    s = SubPartition(kprime)
    t = single_collision_tuple(p, s, seed=0)
    M, _ = krylov_matrix(kronecker_sum(t), determinant_covector(p))
    rank = numerical_rank(M, 1e-8)
    e = exponent(p, s)
    print(f"\nk={p.k}, collision at k'={s.kprime}: exponent {e}")
    print(f"  Krylov matrix rank {rank} of {p.size}  (bound N - exponent = {p.size - e})")
