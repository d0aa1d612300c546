"""Deterministic seeded constructors of test tuples.

Three families: fully random tuples (generic with probability 1), tuples with
a planted non-spanning choice of invariant subspaces, and tuples whose
eigenvalues are engineered so that exactly one charged collision factor
vanishes.
"""

from __future__ import annotations

import math
from itertools import combinations

import numpy as np

from .errors import GenerationFailure, InvalidPartition
from .multilinear import MatrixTuple, Partition
from .numerics import eigendecomposition
from .oracle import Witness, stack_choice
from .spectral import SubPartition, validate_sub_partition

MAX_ATTEMPTS = 32
GENERATION_GAP = 1e-6
MAX_SIMILARITY_COND = 10.0


def _complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)


def random_tuple(p: Partition, seed: int) -> MatrixTuple:
    """i.i.d. complex-normal matrices, each rescaled to unit Frobenius norm."""
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(p.l):
        m = _complex_normal(rng, (p.n, p.n))
        mats.append(m / np.linalg.norm(m))
    return MatrixTuple(p, tuple(mats))


def _well_conditioned_similarity(rng: np.random.Generator, n: int) -> np.ndarray:
    for _ in range(MAX_ATTEMPTS):
        g = _complex_normal(rng, (n, n))
        if np.linalg.cond(g) <= MAX_SIMILARITY_COND:
            return g
    raise GenerationFailure(
        f"no similarity with condition number <= {MAX_SIMILARITY_COND} in "
        f"{MAX_ATTEMPTS} draws"
    )


def on_variety_tuple(
    p: Partition, seed: int, gap_tol: float = GENERATION_GAP
) -> tuple[MatrixTuple, Witness]:
    """A tuple with a planted non-spanning family of invariant subspaces.

    All k_i chosen basis vectors live inside one random hyperplane H, so the
    union of the planted subspaces cannot span.  Each matrix is built
    block-upper-triangular in a basis extending its planted subspace, then
    conjugated back; the planted subspace is invariant by construction.
    """
    n, l = p.n, p.l
    if any(ki > n - 1 for ki in p.k):
        raise GenerationFailure(
            "planting requires every k_i <= n - 1 (a full-dimensional "
            "subspace always spans)"
        )
    rng = np.random.default_rng(seed)
    for _ in range(MAX_ATTEMPTS):
        hyper = _complex_normal(rng, (n, n - 1))
        if np.linalg.matrix_rank(hyper) < n - 1:
            continue
        mats = []
        planted_eigs = []
        ok = True
        for ki in p.k:
            v_in = hyper @ _complex_normal(rng, (n - 1, ki))
            basis = np.hstack([v_in, _complex_normal(rng, (n, n - ki))])
            if np.linalg.cond(basis) > 1e6:
                ok = False
                break
            block = np.zeros((n, n), dtype=complex)
            block[:ki, :ki] = _complex_normal(rng, (ki, ki))
            block[:ki, ki:] = _complex_normal(rng, (ki, n - ki))
            block[ki:, ki:] = _complex_normal(rng, (n - ki, n - ki))
            a = basis @ block @ np.linalg.inv(basis)
            nrm = np.linalg.norm(a)
            mats.append(a / nrm)
            planted_eigs.append(np.linalg.eigvals(block[:ki, :ki]) / nrm)
        if not ok:
            continue
        t = MatrixTuple(p, tuple(mats))
        spectra = [eigendecomposition(m) for m in t.matrices]
        if min(s.min_gap for s in spectra) <= max(gap_tol, GENERATION_GAP):
            continue
        choice = []
        for spec, eigs in zip(spectra, planted_eigs):
            idx = sorted(
                int(np.argmin(np.abs(spec.eigenvalues - lam))) + 1 for lam in eigs
            )
            if len(set(idx)) != len(idx):
                ok = False
                break
            choice.append(tuple(idx))
        if not ok:
            continue
        basis = stack_choice(spectra, tuple(choice))
        sigma = float(np.linalg.svd(basis, compute_uv=False)[-1])
        return t, Witness(tuple(choice), sigma, basis)
    raise GenerationFailure(f"no valid planted tuple in {MAX_ATTEMPTS} attempts")


def collision_eigenvalues(a: int, b: int) -> list[int]:
    """Signed powers of two with one engineered subset-sum collision.

    The multiset (-2)^1, ..., (-2)^(2a-1), -(2^(2a) - 2), (-2)^(2a+1), ...,
    (-2)^b admits exactly one unordered pair of disjoint nonempty subsets
    with equal sums, and both subsets have a elements.
    """
    if a < 1 or b < 2 * a:
        raise InvalidPartition(f"need 1 <= a and 2a <= b, got a={a}, b={b}")
    out = [(-2) ** m for m in range(1, b + 1)]
    out[2 * a - 1] = -(2 ** (2 * a) - 2)
    return out


def find_equal_sum_pairs(values: list[int]) -> list[tuple[int, int]]:
    """All unordered pairs of disjoint nonempty index subsets with equal sums.

    Subsets are returned as bitmasks; exhaustive over all 2^b subsets.
    """
    b = len(values)
    sums = [0] * (1 << b)
    for mask in range(1, 1 << b):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + values[low.bit_length() - 1]
    buckets: dict[int, list[int]] = {}
    for mask in range(1, 1 << b):
        buckets.setdefault(sums[mask], []).append(mask)
    pairs = []
    for group in buckets.values():
        if len(group) < 2:
            continue
        for m1, m2 in combinations(group, 2):
            if m1 & m2 == 0:
                pairs.append((m1, m2))
    return pairs


def verify_unique_collision(values: list[int], a: int) -> tuple[list[int], list[int]]:
    """Check the single-collision property and return the two index lists."""
    pairs = find_equal_sum_pairs(values)
    if len(pairs) != 1:
        raise GenerationFailure(
            f"expected exactly one equal-sum disjoint pair, found {len(pairs)}"
        )
    m1, m2 = pairs[0]
    s1 = [i for i in range(len(values)) if m1 >> i & 1]
    s2 = [i for i in range(len(values)) if m2 >> i & 1]
    if len(s1) != a or len(s2) != a:
        raise GenerationFailure(
            f"collision pair has sizes {len(s1)}/{len(s2)}, expected {a}/{a}"
        )
    return s1, s2


def collision_assignment(p: Partition, s: SubPartition) -> list[list[int]]:
    """Exact per-matrix eigenvalue lists realizing the engineered collision.

    Matrix i receives k'_i eigenvalues from each side of the unique equal-sum
    pair and fills its remaining slots from the unused pool, so the collision
    factor of s vanishes and every other charged factor does not.
    """
    validate_sub_partition(p, s)
    if s.weight < 2:
        raise InvalidPartition("collision construction needs weight >= 2")
    if any(2 * kp > p.n for kp in s.kprime):
        raise InvalidPartition(
            f"need 2 k'_i <= n to place both collision sides, got {s.kprime}"
        )
    a, b = s.weight, p.n * p.l
    values = collision_eigenvalues(a, b)
    side1, side2 = verify_unique_collision(values, a)
    used = set(side1) | set(side2)
    pool = [i for i in range(b) if i not in used]
    out = []
    pos1 = pos2 = pos_pool = 0
    for ki, kp in zip(p.k, s.kprime):
        eigs = [values[i] for i in side1[pos1:pos1 + kp]]
        eigs += [values[i] for i in side2[pos2:pos2 + kp]]
        fill = p.n - 2 * kp
        eigs += [values[i] for i in pool[pos_pool:pos_pool + fill]]
        pos1 += kp
        pos2 += kp
        pos_pool += fill
        out.append(eigs)
    return out


def single_collision_tuple(p: Partition, s: SubPartition, seed: int) -> MatrixTuple:
    """Diagonalizable tuple on which exactly one charged collision factor is zero.

    Eigenvalues follow collision_assignment; each matrix is a diagonal
    conjugated by a seeded well-conditioned similarity so the general
    (non-diagonal) code paths are exercised.
    """
    assignment = collision_assignment(p, s)
    rng = np.random.default_rng(seed)
    mats = []
    for eigs in assignment:
        g = _well_conditioned_similarity(rng, p.n)
        mats.append(g @ np.diag(np.asarray(eigs, dtype=complex)) @ np.linalg.inv(g))
    return MatrixTuple(p, tuple(mats))
