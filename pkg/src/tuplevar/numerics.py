"""Scale-safe dense complex linear algebra.

Determinant-like quantities are carried as LogComplex (log-magnitude plus
phase) so that products over thousands of factors never overflow.  Exact zero
is a value, not an error.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NumericalFailure

ZERO_PIVOT = 1e-300


def _wrap_phase(phi: float) -> float:
    """Reduce to (-pi, pi]."""
    phi = math.remainder(phi, 2.0 * math.pi)
    if phi <= -math.pi:
        phi += 2.0 * math.pi
    return phi


@dataclass(frozen=True)
class LogComplex:
    """A nonzero-scale-safe complex scalar: log|z| and arg z, or exact zero."""

    log_mag: float
    phase: float
    is_zero: bool = False

    @staticmethod
    def zero() -> "LogComplex":
        return LogComplex(0.0, 0.0, is_zero=True)

    @staticmethod
    def one() -> "LogComplex":
        return LogComplex(0.0, 0.0)

    @staticmethod
    def from_complex(z: complex) -> "LogComplex":
        z = complex(z)
        if abs(z) < ZERO_PIVOT:
            return LogComplex.zero()
        return LogComplex(math.log(abs(z)), math.atan2(z.imag, z.real))

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        if self.is_zero or other.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_mag + other.log_mag, _wrap_phase(self.phase + other.phase)
        )

    def __truediv__(self, other: "LogComplex") -> "LogComplex":
        if other.is_zero:
            raise ZeroDivisionError("division by LogComplex zero")
        if self.is_zero:
            return LogComplex.zero()
        return LogComplex(
            self.log_mag - other.log_mag, _wrap_phase(self.phase - other.phase)
        )

    def power(self, e: int) -> "LogComplex":
        if self.is_zero:
            return LogComplex.zero() if e > 0 else LogComplex.one()
        return LogComplex(e * self.log_mag, _wrap_phase(e * self.phase))

    def to_complex(self) -> complex:
        """Materialize; may overflow/underflow for extreme magnitudes."""
        if self.is_zero:
            return 0.0 + 0.0j
        return math.exp(self.log_mag) * complex(
            math.cos(self.phase), math.sin(self.phase)
        )

    @property
    def log10_mag(self) -> float:
        return -math.inf if self.is_zero else self.log_mag / math.log(10.0)


@dataclass(frozen=True)
class SpectralData:
    """Eigendecomposition with gap and backward-error diagnostics."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # unit-norm columns, eigenvectors[:, j] for eigenvalues[j]
    min_gap: float
    backward_error: float


def eigendecomposition(A: np.ndarray) -> SpectralData:
    """Eigenvalues and unit eigenvectors in deterministic order.

    Eigenvalues are sorted by real part, then imaginary part, and the
    eigenvector columns are permuted to match.
    """
    A = np.asarray(A, dtype=complex)
    n = A.shape[0]
    if A.shape != (n, n):
        raise NumericalFailure(f"matrix must be square, got {A.shape}")
    try:
        lam, V = np.linalg.eig(A)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"eigendecomposition failed: {e}") from e
    order = np.lexsort((lam.imag, lam.real))
    lam = lam[order]
    V = V[:, order]
    V = V / np.linalg.norm(V, axis=0, keepdims=True)

    norm_a = np.linalg.norm(A, 2)
    resid = np.linalg.norm(A @ V - V * lam, axis=0)
    backward = float(resid.max() / norm_a) if norm_a > 0 else float(resid.max())
    if n > 1:
        diffs = np.abs(lam[:, None] - lam[None, :])
        min_gap = float(diffs[~np.eye(n, dtype=bool)].min())
    else:
        min_gap = math.inf
    return SpectralData(lam, V, min_gap, backward)


def lu_logdet(M: np.ndarray) -> LogComplex:
    """Determinant via LU with partial pivoting, in LogComplex form.

    Any pivot below the underflow threshold marks the determinant as exact
    zero; consumers apply their own statistical thresholds on log_mag.
    """
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if M.shape != (n, n):
        raise NumericalFailure(f"matrix must be square, got {M.shape}")
    if n == 0:
        return LogComplex.one()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(M, check_finite=True)
    diag = np.diagonal(lu)
    mags = np.abs(diag)
    if np.any(mags < ZERO_PIVOT):
        return LogComplex.zero()
    swaps = int(np.sum(piv != np.arange(n)))
    phase = float(np.sum(np.angle(diag))) + (math.pi if swaps % 2 else 0.0)
    return LogComplex(float(np.sum(np.log(mags))), _wrap_phase(phase))


def singular_values(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    try:
        return np.linalg.svd(M, compute_uv=False)
    except np.linalg.LinAlgError as e:
        raise NumericalFailure(f"SVD failed to converge: {e}") from e


def smallest_singular_value(M: np.ndarray) -> float:
    s = singular_values(M)
    return float(s[-1]) if s.size else 0.0


def numerical_rank(M: np.ndarray, tol: float) -> int:
    """Number of singular values above tol times the largest one."""
    if tol <= 0:
        raise NumericalFailure(f"tolerance must be positive, got {tol}")
    s = singular_values(M)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))
