"""Numerical certificates for matrix tuples with linearly dependent invariant subspaces.

Given l complex n x n matrices and a partition k_1 + ... + k_l = n, the
library decides whether the tuple admits k_i-dimensional invariant subspaces
that together fail to span C^n, by evaluating a Krylov determinant on the
tensor product of exterior powers, dividing out its spectral collision
factors, and cross-validating against a brute-force subspace enumeration.
"""

__version__ = "0.1.0"

from .certifier import (
    CertificateValue,
    CertifyConfig,
    Status,
    Verdict,
    certificate_degree,
    certify,
    homogeneity_error,
    krylov_determinant,
    krylov_matrix,
    reduced_certificate,
    spectral_determinant,
)
from .errors import (
    DocumentError,
    GenerationFailure,
    InvalidIndex,
    InvalidPartition,
    NonDiagonalizable,
    NumericalFailure,
    TooLarge,
    TuplevarError,
)
from .generators import (
    collision_eigenvalues,
    on_variety_tuple,
    random_tuple,
    single_collision_tuple,
    verify_unique_collision,
)
from .multilinear import (
    MatrixTuple,
    Partition,
    determinant_covector,
    flat_index,
    kronecker_sum,
    pair_with_decomposable,
    unflat_index,
    wedge_basis,
    wedge_derivation,
)
from .numerics import (
    LogComplex,
    SpectralData,
    eigendecomposition,
    lu_logdet,
    numerical_rank,
    smallest_singular_value,
)
from .oracle import OracleResult, Witness, agree, invariant_subspaces, oracle_detect
from .spectral import (
    SubPartition,
    collision_factor,
    exponent,
    fg_pairs,
    spectral_denominator,
    sub_partitions,
)

__all__ = [name for name in dir() if not name.startswith("_")]
