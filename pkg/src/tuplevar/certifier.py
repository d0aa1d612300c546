"""Membership certificates for the dependent-invariant-subspace hypersurface.

The pipeline: build the Krylov matrix of the determinant covector under the
induced operator, take its determinant (P), divide out the charged collision
factors (the denominator), and compare the magnitude of the quotient
certificate against a calibration baseline of random same-norm tuples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, product

import numpy as np

from .errors import NumericalFailure
from .multilinear import (
    DEFAULT_SIZE_CAP,
    MatrixTuple,
    Partition,
    determinant_covector,
    kronecker_sum,
)
from .numerics import ZERO_PIVOT, LogComplex, SpectralData, _wrap_phase, eigendecomposition, lu_logdet
from .spectral import spectral_denominator

#: log-magnitude floor below which a charged collision factor makes pointwise
#: division ill-posed (both numerator and denominator vanish there)
DENOM_MARGIN_FLOOR = math.log(1e-6)


class Status(str, Enum):
    ON_VARIETY = "on_variety"
    GENERIC = "generic"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class CertifyConfig:
    """Thresholds for certify(); all verdicts are deterministic given a seed.

    drop and margin are absolute floors on the log-magnitude cuts below the
    calibration scale; because the spread of log-certificate values over
    random tuples grows with the certificate degree, both cuts are widened to
    spread_sigmas times the calibrated standard deviation (plus drop_gap for
    the on-variety cut, the log-drop a single vanishing eigenvector
    determinant produces at working precision).
    """

    drop: float = 23.0          # residual below scale - drop => on variety (~1e-10)
    margin: float = 11.5        # residual above scale - margin => generic (~1e-5)
    gap_tol: float = 1e-8       # minimum eigenvalue gap for a trustworthy verdict
    calibration_samples: int = 16
    spread_sigmas: float = 4.0
    drop_gap: float = 20.0
    seed: int = 0
    size_cap: int = DEFAULT_SIZE_CAP


@dataclass(frozen=True)
class Verdict:
    status: Status
    residual: float          # log-magnitude of the quotient certificate
    scale: float             # calibration baseline (mean over random tuples)
    denom_margin: float      # min log-magnitude over charged collision factors
    notes: dict = field(default_factory=dict)


def krylov_matrix(
    A: np.ndarray, w: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Rows w, wA, ..., wA^{N-1}, each rescaled to unit norm.

    Returns (M, row_log_scales); the true row r is exp(row_log_scales[r])
    times the stored row.  Rescaling keeps entries in range even though raw
    powers grow like the operator norm to the N-1.
    """
    A = np.asarray(A, dtype=complex)
    w = np.asarray(w, dtype=complex)
    N = A.shape[0]
    M = np.zeros((N, N), dtype=complex)
    gammas = np.zeros(N)
    row = w.copy()
    log_scale = 0.0
    for r in range(N):
        nrm = np.linalg.norm(row)
        if nrm == 0:
            # the Krylov sequence died; remaining rows are zero and the
            # determinant is exactly zero
            gammas[r:] = log_scale
            break
        row = row / nrm
        log_scale += math.log(nrm)
        M[r] = row
        gammas[r] = log_scale
        row = row @ A
    return M, gammas


def krylov_determinant(
    t: MatrixTuple, size_cap: int = DEFAULT_SIZE_CAP
) -> LogComplex:
    """det of the Krylov matrix; zero iff the tuple admits the dependent
    invariant-subspace structure or a charged collision factor vanishes."""
    A = kronecker_sum(t, size_cap=size_cap)
    w = determinant_covector(t.partition)
    M, gammas = krylov_matrix(A, w)
    d = lu_logdet(M)
    if d.is_zero:
        return d
    return LogComplex(d.log_mag + float(gammas.sum()), d.phase)


def spectral_determinant(
    t: MatrixTuple,
    size_cap: int = DEFAULT_SIZE_CAP,
    spectra: list[SpectralData] | None = None,
) -> LogComplex:
    """The Krylov determinant evaluated through the eigenbasis.

    In the eigenbasis of the induced operator the Krylov matrix factors as
    Vandermonde(mu) . diag(w u_F) . U^{-1}, so its determinant is

        prod_{F<G} (mu_G - mu_F)  .  prod_F det(stacked eigenvectors of F)
            /  prod_i det(U_i)^{C(n-1, k_i-1) N / C(n, k_i)}

    (det of a Kronecker product of compound matrices, by Sylvester-Franke).
    Every piece is a short product of well-scaled quantities, so this route
    stays accurate at dimensions where LU on the ill-conditioned Krylov
    matrix loses the value entirely.  Mathematically identical to
    krylov_determinant for diagonalizable tuples.
    """
    p = t.partition
    N = p.size
    if N > size_cap:
        from .errors import TooLarge

        raise TooLarge(f"tensor space dimension {N} exceeds cap {size_cap}")
    if spectra is None:
        spectra = [eigendecomposition(Ai) for Ai in t.matrices]

    # per-matrix wedge data in lexicographic subset order
    subset_lists = [list(combinations(range(p.n), ki)) for ki in p.k]
    per_mu = [
        np.array([spec.eigenvalues[list(S)].sum() for S in subsets])
        for spec, subsets in zip(spectra, subset_lists)
    ]

    log_mag = 0.0
    phase = 0.0

    # flat-order eigenvalues of the induced operator (first factor most significant)
    mu = per_mu[0]
    for m in per_mu[1:]:
        mu = (mu[:, None] + m[None, :]).ravel()
    diffs = mu[None, :] - mu[:, None]
    iu = np.triu_indices(N, k=1)
    vand = diffs[iu]
    if np.any(np.abs(vand) < ZERO_PIVOT):
        return LogComplex.zero()
    log_mag += float(np.sum(np.log(np.abs(vand))))
    phase += float(np.sum(np.angle(vand)))

    # covector pairings: det of each choice of stacked eigenvectors
    for choice in product(*subset_lists):
        stacked = np.hstack(
            [spec.eigenvectors[:, list(S)] for spec, S in zip(spectra, choice)]
        )
        d = np.linalg.det(stacked)
        if abs(d) < ZERO_PIVOT:
            return LogComplex.zero()
        log_mag += math.log(abs(d))
        phase += math.atan2(d.imag, d.real)

    for spec, ki, dim in zip(spectra, p.k, p.factor_dims):
        e = math.comb(p.n - 1, ki - 1) * (N // dim)
        du = lu_logdet(spec.eigenvectors)
        if du.is_zero:
            raise NumericalFailure("eigenvector matrix numerically singular")
        log_mag -= e * du.log_mag
        phase -= e * du.phase
    return LogComplex(log_mag, _wrap_phase(phase))


@dataclass(frozen=True)
class CertificateValue:
    """Quotient certificate value with division diagnostics."""

    value: LogComplex
    denom_margin: float
    ill_conditioned: bool  # denominator vanished or a charged factor is tiny


def reduced_certificate(
    t: MatrixTuple,
    size_cap: int = DEFAULT_SIZE_CAP,
    spectra: list[SpectralData] | None = None,
) -> CertificateValue:
    """The Krylov determinant divided by the charged collision factors.

    Numerator and denominator are evaluated from the same eigendecomposition,
    so the collision factors shared between the Vandermonde part and the
    denominator cancel to working precision.
    """
    if spectra is None:
        spectra = [eigendecomposition(Ai) for Ai in t.matrices]
    den = spectral_denominator(spectra, t.partition)
    flagged = den.value.is_zero or den.min_factor_log < DENOM_MARGIN_FLOOR
    num = spectral_determinant(t, size_cap=size_cap, spectra=spectra)
    if den.value.is_zero:
        # 0/0 on the collision locus is ill-posed pointwise; report the raw
        # numerator and let the caller abstain
        return CertificateValue(num, den.min_factor_log, True)
    return CertificateValue(num / den.value, den.min_factor_log, flagged)


def certificate_degree(p: Partition, i: int | None = None) -> int:
    """Degree of the quotient certificate in matrix i (or total when i is None)."""
    if i is None:
        return sum(certificate_degree(p, j) for j in range(p.l))
    n = p.n
    d = math.comb(n, 2) * math.comb(n - 2, p.k[i] - 1)
    for j, kj in enumerate(p.k):
        if j != i:
            d *= math.comb(n, kj)
    return d


def homogeneity_error(
    t: MatrixTuple, i: int, scale: float, size_cap: int = DEFAULT_SIZE_CAP
) -> float:
    """| log|cert(t with A_i <- c A_i)| - log|cert(t)| - d_i ln c |.

    Passes the multihomogeneity check when below 1e-6 times the degree d_i.
    """
    base = reduced_certificate(t, size_cap=size_cap)
    scaled = reduced_certificate(t.scaled(i, scale), size_cap=size_cap)
    if base.ill_conditioned or scaled.ill_conditioned:
        raise NumericalFailure("certificate ill-conditioned at one of the two points")
    if base.value.is_zero or scaled.value.is_zero:
        raise NumericalFailure("certificate vanished; homogeneity check needs a generic point")
    d = certificate_degree(t.partition, i)
    return abs(scaled.value.log_mag - base.value.log_mag - d * math.log(scale))


_calibration_cache: dict = {}


def _calibration_scale(p: Partition, cfg: CertifyConfig) -> tuple[float, float]:
    """Mean and spread of the log-certificate over seeded random unit tuples."""
    key = (p, cfg.seed, cfg.calibration_samples, cfg.size_cap)
    if key in _calibration_cache:
        return _calibration_cache[key]
    from .generators import random_tuple

    rng = np.random.default_rng(cfg.seed)
    vals = []
    attempts = 0
    while len(vals) < cfg.calibration_samples and attempts < 8 * cfg.calibration_samples:
        attempts += 1
        sample = random_tuple(p, int(rng.integers(0, 2**63)))
        cert = reduced_certificate(sample, size_cap=cfg.size_cap)
        if cert.ill_conditioned or cert.value.is_zero:
            continue
        vals.append(cert.value.log_mag)
    if not vals:
        raise NumericalFailure("calibration failed: no well-conditioned random sample")
    scale = float(np.mean(vals))
    sigma = float(np.std(vals, ddof=1)) if len(vals) > 1 else 0.0
    _calibration_cache[key] = (scale, sigma)
    return scale, sigma


def certify(t: MatrixTuple, cfg: CertifyConfig | None = None) -> Verdict:
    """Decide whether the tuple lies on the dependent-subspace hypersurface.

    Matrices are normalized to unit Frobenius norm first (membership is
    scale-invariant by multihomogeneity); the certificate magnitude is then
    compared against the calibration baseline of random unit-norm tuples with
    the same partition.  Near-collision inputs and repeated eigenvalues yield
    an abstention rather than a guess.
    """
    cfg = cfg or CertifyConfig()
    t = t.normalized()
    notes: dict = {}

    spectra = [eigendecomposition(Ai) for Ai in t.matrices]
    gaps = [s.min_gap for s in spectra]
    notes["eigenvalue_gaps"] = gaps
    if min(gaps) < cfg.gap_tol:
        notes["reason"] = "eigenvalue gap below gap_tol; converse direction unreliable"
        return Verdict(Status.INDETERMINATE, math.nan, math.nan, math.nan, notes)

    cert = reduced_certificate(t, size_cap=cfg.size_cap, spectra=spectra)
    if cert.ill_conditioned:
        notes["reason"] = (
            "charged collision factor nearly vanishes; pointwise quotient "
            "ill-posed (retry with a random perturbation)"
        )
        return Verdict(
            Status.INDETERMINATE, math.nan, math.nan, cert.denom_margin, notes
        )

    scale, sigma = _calibration_scale(t.partition, cfg)
    drop = max(cfg.drop, cfg.spread_sigmas * sigma + cfg.drop_gap)
    margin = max(cfg.margin, cfg.spread_sigmas * sigma)
    notes["calibration_sigma"] = sigma
    residual = -math.inf if cert.value.is_zero else cert.value.log_mag
    if residual < scale - drop:
        status = Status.ON_VARIETY
    elif residual > scale - margin:
        status = Status.GENERIC
    else:
        status = Status.INDETERMINATE
        notes["reason"] = "residual in the inconclusive band between drop and margin"
    return Verdict(status, residual, scale, cert.denom_margin, notes)
