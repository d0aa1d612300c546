"""Brute-force ground truth.

For matrices with distinct eigenvalues every k-dimensional invariant subspace
is spanned by k eigenvectors, so membership on the hypersurface can be decided
exhaustively: stack one choice of unit eigenvectors per matrix and measure the
smallest singular value of the resulting n x n matrix.  The tuple is on the
hypersurface iff some choice fails to span, i.e. the global minimum is zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .certifier import Status, Verdict
from .errors import NonDiagonalizable
from .multilinear import MatrixTuple
from .numerics import SpectralData, eigendecomposition, smallest_singular_value

DEFAULT_GAP_TOL = 1e-8
ORACLE_ZERO = 1e-7


@dataclass(frozen=True)
class Witness:
    """A choice of eigenvector index subsets and its span defect."""

    choice: tuple[tuple[int, ...], ...]  # 1-based indices into the sorted spectrum
    sigma_min: float
    basis: np.ndarray  # the n stacked unit eigenvectors, as columns


@dataclass(frozen=True)
class OracleResult:
    min_sigma: float
    witness: Witness


def invariant_subspaces(
    spec: SpectralData, k: int, gap_tol: float = DEFAULT_GAP_TOL
) -> list[tuple[int, ...]]:
    """Index subsets spanning every k-dimensional invariant subspace.

    Complete only in the distinct-eigenvalue regime; below gap_tol the
    enumeration would be a lie, so it refuses instead.
    """
    if spec.min_gap <= gap_tol:
        raise NonDiagonalizable(
            f"eigenvalue gap {spec.min_gap:.3e} <= {gap_tol:.3e}; "
            "invariant subspaces cannot be enumerated from eigenvectors"
        )
    n = len(spec.eigenvalues)
    return list(combinations(range(1, n + 1), k))


def stack_choice(
    spectra: list[SpectralData], choice: tuple[tuple[int, ...], ...]
) -> np.ndarray:
    """n x n matrix of the chosen unit eigenvectors, in matrix order."""
    cols = [spec.eigenvectors[:, [j - 1 for j in subset]]
            for spec, subset in zip(spectra, choice)]
    return np.hstack(cols)


def oracle_detect(
    t: MatrixTuple, gap_tol: float = DEFAULT_GAP_TOL
) -> OracleResult:
    """Scan all prod C(n, k_i) eigenvector-subset choices for a span failure."""
    p = t.partition
    spectra = [eigendecomposition(Ai) for Ai in t.matrices]
    per_matrix = [
        invariant_subspaces(spec, ki, gap_tol=gap_tol)
        for spec, ki in zip(spectra, p.k)
    ]
    best: Witness | None = None
    for choice in product(*per_matrix):
        basis = stack_choice(spectra, choice)
        sigma = smallest_singular_value(basis)
        if best is None or sigma < best.sigma_min:
            best = Witness(tuple(choice), sigma, basis)
    assert best is not None
    return OracleResult(best.sigma_min, best)


def agree(verdict: Verdict, oracle_out: OracleResult) -> bool:
    """Certifier/oracle consistency; abstention never counts as disagreement."""
    if verdict.status is Status.INDETERMINATE:
        return True
    on_variety = oracle_out.min_sigma < ORACLE_ZERO
    return (verdict.status is Status.ON_VARIETY) == on_variety
