"""Collision factors of the induced operator's spectrum.

Each sub-partition k' (0 <= k'_i <= k_i, not all zero) owns a product of
linear forms in the eigenvalues: over all oriented pairs (F, G) of disjoint
per-matrix index subsets of sizes k'_i, the factor

    sum_i ( sum_{j in F(i)} lambda_{i,j}  -  sum_{j in G(i)} lambda_{i,j} ).

For weight sum(k') >= 2 this product is a polynomial invariant under
per-matrix eigenvalue permutations; powered by its combinatorial exponent it
divides the Krylov determinant, and the product over all charged
sub-partitions is the denominator of the reduced certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import InvalidPartition
from .multilinear import Partition
from .numerics import ZERO_PIVOT, LogComplex, SpectralData, _wrap_phase


@dataclass(frozen=True)
class SubPartition:
    """Per-matrix collision sizes k'_i with 0 <= k'_i <= k_i."""

    kprime: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "kprime", tuple(int(x) for x in self.kprime))
        if any(x < 0 for x in self.kprime):
            raise InvalidPartition(f"sub-partition parts must be >= 0, got {self.kprime}")
        if self.weight < 1:
            raise InvalidPartition("sub-partition must have at least one nonzero part")

    @property
    def weight(self) -> int:
        return sum(self.kprime)


def validate_sub_partition(p: Partition, s: SubPartition) -> None:
    if len(s.kprime) != p.l:
        raise InvalidPartition(
            f"sub-partition length {len(s.kprime)} != number of matrices {p.l}"
        )
    if any(kp > ki for kp, ki in zip(s.kprime, p.k)):
        raise InvalidPartition(f"sub-partition {s.kprime} exceeds partition {p.k}")


def sub_partitions(p: Partition, min_weight: int = 1) -> list[SubPartition]:
    """All sub-partitions of p with weight >= min_weight, lexicographic order."""
    out = []
    for kp in product(*(range(ki + 1) for ki in p.k)):
        if sum(kp) >= max(min_weight, 1):
            out.append(SubPartition(kp))
    return out


def fg_pairs(
    p: Partition, s: SubPartition
) -> list[tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]]:
    """All oriented pairs (F, G) of per-matrix disjoint k'_i-subsets of [n].

    Orientation: at the smallest i with k'_i != 0, min F(i) < min G(i).  Count
    is half of prod_i C(n, k'_i) * C(n - k'_i, k'_i); empty when some
    2 k'_i > n.
    """
    validate_sub_partition(p, s)
    n = p.n
    per_coord = []
    for kp in s.kprime:
        if kp == 0:
            per_coord.append([((), ())])
            continue
        if 2 * kp > n:
            return []
        opts = []
        for F in combinations(range(1, n + 1), kp):
            rest = [x for x in range(1, n + 1) if x not in F]
            for G in combinations(rest, kp):
                opts.append((F, G))
        per_coord.append(opts)
    lead = next(i for i, kp in enumerate(s.kprime) if kp != 0)
    out = []
    for combo in product(*per_coord):
        F = tuple(c[0] for c in combo)
        G = tuple(c[1] for c in combo)
        if min(F[lead]) < min(G[lead]):
            out.append((F, G))
    return out


def _eigenvalue_lists(spectra: Sequence) -> list[np.ndarray]:
    out = []
    for s in spectra:
        lam = s.eigenvalues if isinstance(s, SpectralData) else s
        out.append(np.asarray(lam, dtype=complex))
    return out


def collision_factor(spectra: Sequence, p: Partition, s: SubPartition) -> LogComplex:
    """Product over oriented (F, G) pairs of the eigenvalue-sum differences.

    Exact zero (is_zero) when any single factor magnitude underflows; an
    empty pair set yields one.
    """
    lams = _eigenvalue_lists(spectra)
    log_mag = 0.0
    phase = 0.0
    for F, G in fg_pairs(p, s):
        f = 0.0 + 0.0j
        for i, lam in enumerate(lams):
            f += lam[[j - 1 for j in F[i]]].sum() - lam[[j - 1 for j in G[i]]].sum()
        if abs(f) < ZERO_PIVOT:
            return LogComplex.zero()
        log_mag += math.log(abs(f))
        phase += math.atan2(f.imag, f.real)
    return LogComplex(log_mag, _wrap_phase(phase))


def exponent(p: Partition, s: SubPartition) -> int:
    """Multiplicity prod_i C(n - 2 k'_i, k_i - k'_i) with out-of-range binomials = 0."""
    validate_sub_partition(p, s)
    out = 1
    for ki, kp in zip(p.k, s.kprime):
        a, b = p.n - 2 * kp, ki - kp
        if a < 0 or b > a:
            return 0
        out *= math.comb(a, b)
    return out


@dataclass(frozen=True)
class DenominatorValue:
    """Denominator of the reduced certificate plus conditioning diagnostics."""

    value: LogComplex
    min_factor_log: float  # smallest log-magnitude among all charged factors
    vanished: SubPartition | None = None


def spectral_denominator(spectra: Sequence, p: Partition) -> DenominatorValue:
    """Product of charged collision factors: weight >= 2, positive exponent."""
    lams = _eigenvalue_lists(spectra)
    log_mag = 0.0
    phase = 0.0
    min_factor = math.inf
    vanished = None
    is_zero = False
    for s in sub_partitions(p, min_weight=2):
        e = exponent(p, s)
        if e == 0:
            continue
        for F, G in fg_pairs(p, s):
            f = 0.0 + 0.0j
            for i, lam in enumerate(lams):
                f += lam[[j - 1 for j in F[i]]].sum() - lam[[j - 1 for j in G[i]]].sum()
            mag = abs(f)
            if mag < ZERO_PIVOT:
                is_zero = True
                vanished = vanished or s
                min_factor = -math.inf
                continue
            min_factor = min(min_factor, math.log(mag))
            log_mag += e * math.log(mag)
            phase += e * math.atan2(f.imag, f.real)
    if is_zero:
        return DenominatorValue(LogComplex.zero(), -math.inf, vanished)
    return DenominatorValue(LogComplex(log_mag, _wrap_phase(phase)), min_factor)
