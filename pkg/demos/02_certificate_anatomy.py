"""Anatomy of the certificate: P, the collision factors, and P-hat.

Walks one tuple through the whole pipeline, printing the intermediate
objects, and finishes with the n = 2 closed form
P-hat = -det(A1 A2 - A2 A1).
"""

import numpy as np

from tuplevar import (
    Partition,
    determinant_covector,
    exponent,
    krylov_determinant,
    kronecker_sum,
    random_tuple,
    reduced_certificate,
    spectral_determinant,
    sub_partitions,
)
from tuplevar.numerics import eigendecomposition
from tuplevar.spectral import collision_factor, fg_pairs

p = Partition(3, (1, 2))
t = random_tuple(p, seed=4)

A = kronecker_sum(t)
w = determinant_covector(p)
print(f"induced operator: {A.shape[0]} x {A.shape[1]}, covector support {np.count_nonzero(w)} of {p.size}")

P_lu = krylov_determinant(t)
P_sp = spectral_determinant(t)
print(f"P via LU on the Krylov matrix : log|P| = {P_lu.log_mag:+.12f}  phase {P_lu.phase:+.6f}")
print(f"P via eigen-factorization     : log|P| = {P_sp.log_mag:+.12f}  phase {P_sp.phase:+.6f}")

spectra = [eigendecomposition(m) for m in t.matrices]
print("\ncharged collision factors (weight >= 2, positive exponent):")
for s in sub_partitions(p, min_weight=2):
    e = exponent(p, s)
    if e == 0:
        continue
    d = collision_factor(spectra, p, s)
    print(f"  k'={s.kprime}: {len(fg_pairs(p, s))} oriented pairs, exponent {e}, log|D| = {d.log_mag:+.4f}")

cert = reduced_certificate(t)
print(f"\nP-hat: log|P-hat| = {cert.value.log_mag:+.6f}, denominator margin {cert.denom_margin:+.4f}")

# n = 2: the certificate is exactly minus the commutator determinant
p2 = Partition(2, (1, 1))
print("\nn = 2 closed form, five random pairs:")
for seed in range(5):
    t2 = random_tuple(p2, seed)
    a1, a2 = t2.matrices
    ratio = reduced_certificate(t2).value.to_complex() / np.linalg.det(a1 @ a2 - a2 @ a1)
    print(f"  seed {seed}: P-hat / det([A1, A2]) = {ratio:.15f}")
