"""Combinatorial and multilinear core.

Basis bookkeeping for the tensor product of exterior powers
Lambda^{k_1} C^n (x) ... (x) Lambda^{k_l} C^n, the operator induced on it by a
tuple of n x n matrices (a Kronecker sum of wedge derivations), and the
determinant covector whose pairing with a decomposable tensor equals the
determinant of the assembled column vectors.

Subsets of [n] are 1-based sorted tuples throughout; the flat basis order is
the row-major mixed-radix order over lexicographically sorted k-subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import InvalidIndex, InvalidPartition, TooLarge

DEFAULT_SIZE_CAP = 4096


@dataclass(frozen=True)
class Partition:
    """Ambient dimension n with prescribed subspace dimensions k_1..k_l, sum = n."""

    n: int
    k: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if self.n < 1:
            raise InvalidPartition(f"n must be positive, got {self.n}")
        if len(self.k) < 1:
            raise InvalidPartition("partition must have at least one part")
        if any(not 1 <= x <= self.n for x in self.k):
            raise InvalidPartition(f"every part must lie in [1, {self.n}], got {self.k}")
        if sum(self.k) != self.n:
            raise InvalidPartition(f"partition must sum to n: sum{self.k} != {self.n}")

    @property
    def l(self) -> int:
        return len(self.k)

    @property
    def factor_dims(self) -> tuple[int, ...]:
        """Dimension C(n, k_i) of each wedge factor."""
        return tuple(math.comb(self.n, ki) for ki in self.k)

    @property
    def size(self) -> int:
        """Total dimension N = prod C(n, k_i) of the tensor product space."""
        return math.prod(self.factor_dims)


@dataclass(frozen=True)
class MatrixTuple:
    """The universal input: l complex n x n matrices plus their partition."""

    partition: Partition
    matrices: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        mats = tuple(np.asarray(m, dtype=complex) for m in self.matrices)
        n = self.partition.n
        if len(mats) != self.partition.l:
            raise InvalidPartition(
                f"expected {self.partition.l} matrices, got {len(mats)}"
            )
        for m in mats:
            if m.shape != (n, n):
                raise InvalidPartition(f"matrix shape {m.shape} != ({n}, {n})")
            if not np.all(np.isfinite(m)):
                raise InvalidPartition("matrix entries must be finite")
        object.__setattr__(self, "matrices", mats)

    def scaled(self, i: int, c: complex) -> "MatrixTuple":
        """Copy with matrix i multiplied by the scalar c."""
        mats = list(self.matrices)
        mats[i] = mats[i] * c
        return MatrixTuple(self.partition, tuple(mats))

    def normalized(self) -> "MatrixTuple":
        """Copy with each matrix rescaled to unit Frobenius norm."""
        mats = []
        for m in self.matrices:
            nrm = np.linalg.norm(m)
            if nrm == 0:
                raise InvalidPartition("cannot normalize a zero matrix")
            mats.append(m / nrm)
        return MatrixTuple(self.partition, tuple(mats))


@lru_cache(maxsize=None)
def wedge_basis(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """All sorted k-subsets of [n] in lexicographic order."""
    if not 1 <= k <= n:
        raise InvalidPartition(f"need 1 <= k <= n, got k={k}, n={n}")
    return tuple(combinations(range(1, n + 1), k))


def subset_rank(n: int, subset: Sequence[int]) -> int:
    """Lexicographic rank of a sorted k-subset of [n] among all k-subsets."""
    k = len(subset)
    rank = 0
    prev = 0
    for i, s in enumerate(subset):
        if not prev < s <= n:
            raise InvalidIndex(f"subset {tuple(subset)} is not strictly increasing in [1, {n}]")
        for v in range(prev + 1, s):
            rank += math.comb(n - v, k - 1 - i)
        prev = s
    return rank


def subset_unrank(n: int, k: int, rank: int) -> tuple[int, ...]:
    """Inverse of subset_rank."""
    if not 0 <= rank < math.comb(n, k):
        raise InvalidIndex(f"rank {rank} out of range for C({n},{k})")
    out = []
    v = 1
    for i in range(k):
        while True:
            c = math.comb(n - v, k - 1 - i)
            if rank < c:
                break
            rank -= c
            v += 1
        out.append(v)
        v += 1
    return tuple(out)


def flat_index(p: Partition, subsets: Sequence[Sequence[int]]) -> int:
    """Row-major mixed-radix index of a tuple of k_i-subsets, one per factor."""
    if len(subsets) != p.l:
        raise InvalidIndex(f"expected {p.l} subsets, got {len(subsets)}")
    flat = 0
    for (ki, dim, s) in zip(p.k, p.factor_dims, subsets):
        if len(s) != ki:
            raise InvalidIndex(f"subset {tuple(s)} has size {len(s)}, expected {ki}")
        flat = flat * dim + subset_rank(p.n, s)
    return flat


def unflat_index(p: Partition, flat: int) -> tuple[tuple[int, ...], ...]:
    """Inverse of flat_index."""
    if not 0 <= flat < p.size:
        raise InvalidIndex(f"flat index {flat} out of range [0, {p.size})")
    ranks = []
    for dim in reversed(p.factor_dims):
        ranks.append(flat % dim)
        flat //= dim
    ranks.reverse()
    return tuple(
        subset_unrank(p.n, ki, r) for ki, r in zip(p.k, ranks)
    )


def wedge_derivation(A: np.ndarray, k: int) -> np.ndarray:
    """Matrix of the derivation induced by A on Lambda^k C^n (additive compound).

    Sends e_T to sum_j e_{t_1} ^ ... ^ (A e_{t_j}) ^ ... ^ e_{t_k}, expanded in
    the lexicographic wedge basis with reordering signs.  For k = 1 this is A
    itself; eigenvalues are all k-fold sums of eigenvalues of A.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise InvalidPartition(f"matrix must be square, got {A.shape}")
    basis = wedge_basis(n, k)
    index = {T: r for r, T in enumerate(basis)}
    dim = len(basis)
    out = np.zeros((dim, dim), dtype=complex)
    for col, T in enumerate(basis):
        members = set(T)
        for j, t in enumerate(T):
            for m in range(1, n + 1):
                a = A[m - 1, t - 1]
                if a == 0:
                    continue
                if m == t:
                    out[col, col] += a
                    continue
                if m in members:
                    continue  # repeated wedge factor
                # sign = parity of inversions created by substituting m at slot j
                inversions = sum(
                    1
                    for q, tq in enumerate(T)
                    if (q < j and tq > m) or (q > j and tq < m)
                )
                row = index[tuple(sorted(members - {t} | {m}))]
                out[row, col] += (-1) ** inversions * a
    return out


def kronecker_sum(t: MatrixTuple, size_cap: int = DEFAULT_SIZE_CAP) -> np.ndarray:
    """The N x N operator sum_i I (x) ... (x) wedge_derivation(A_i, k_i) (x) ... (x) I.

    Acts on the flat-index basis; eigenvalues are sums over all choices of
    k_i-subsets of each matrix's eigenvalues.
    """
    p = t.partition
    if p.size > size_cap:
        raise TooLarge(f"tensor space dimension {p.size} exceeds cap {size_cap}")
    dims = p.factor_dims
    out = np.zeros((p.size, p.size), dtype=complex)
    for i, (Ai, ki) in enumerate(zip(t.matrices, p.k)):
        block = wedge_derivation(Ai, ki)
        left = math.prod(dims[:i])
        right = math.prod(dims[i + 1:])
        out += np.kron(np.kron(np.eye(left), block), np.eye(right))
    return out


def _word_sign(word: Sequence[int]) -> int:
    inversions = 0
    for i in range(len(word)):
        for j in range(i + 1, len(word)):
            if word[i] > word[j]:
                inversions += 1
    return -1 if inversions % 2 else 1


def determinant_covector(p: Partition) -> np.ndarray:
    """The length-N covector pairing a decomposable tensor to a determinant.

    Entry at basis element (S_1, ..., S_l) is zero unless the subsets
    partition [n]; otherwise it is the sign of the permutation obtained by
    reading the sorted subsets in order as a word in 1..n.  Pairing with
    (x)_i (^)_j v_{i,j} then yields det(v_{1,1}, ..., v_{l,k_l}) exactly
    (generalized Laplace expansion in complementary minors).
    """
    w = np.zeros(p.size, dtype=complex)
    bases = [wedge_basis(p.n, ki) for ki in p.k]
    for subsets in product(*bases):
        word = [x for s in subsets for x in s]
        if len(set(word)) != p.n:
            continue
        w[flat_index(p, subsets)] = _word_sign(word)
    return w


def wedge_coordinates(n: int, vectors: np.ndarray) -> np.ndarray:
    """Coordinates of v_1 ^ ... ^ v_k in the lexicographic wedge basis.

    ``vectors`` is n x k with the v_j as columns; coordinate at subset S is
    the k x k minor on rows S (Pluecker coordinates).
    """
    vectors = np.asarray(vectors, dtype=complex)
    k = vectors.shape[1]
    basis = wedge_basis(n, k)
    coords = np.empty(len(basis), dtype=complex)
    for r, S in enumerate(basis):
        rows = [s - 1 for s in S]
        coords[r] = np.linalg.det(vectors[rows, :]) if k > 1 else vectors[rows[0], 0]
    return coords


def pair_with_decomposable(
    p: Partition, w: np.ndarray, vector_groups: Sequence[np.ndarray]
) -> complex:
    """Apply the covector w to (x)_i (^)_j v_{i,j}.

    Each group i is an n x k_i array of columns.  Expands every wedge into
    Pluecker coordinates and contracts against w; for the determinant
    covector the result equals det of the n x n matrix whose columns are all
    the vectors in order.
    """
    if len(vector_groups) != p.l:
        raise InvalidIndex(f"expected {p.l} vector groups, got {len(vector_groups)}")
    coeffs = None
    for ki, group in zip(p.k, vector_groups):
        group = np.asarray(group, dtype=complex)
        if group.shape != (p.n, ki):
            raise InvalidIndex(f"group shape {group.shape} != ({p.n}, {ki})")
        c = wedge_coordinates(p.n, group)
        coeffs = c if coeffs is None else np.kron(coeffs, c)
    return complex(np.asarray(w, dtype=complex) @ coeffs)
