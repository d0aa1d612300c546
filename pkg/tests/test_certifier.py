import math

import numpy as np
import pytest

from tuplevar import (
    CertifyConfig,
    MatrixTuple,
    NumericalFailure,
    Partition,
    Status,
    SubPartition,
    TooLarge,
    certificate_degree,
    certify,
    determinant_covector,
    homogeneity_error,
    kronecker_sum,
    krylov_determinant,
    krylov_matrix,
    on_variety_tuple,
    random_tuple,
    reduced_certificate,
    single_collision_tuple,
    spectral_determinant,
)

CFG = CertifyConfig(seed=7)


def test_krylov_matrix_rows():
    p = Partition(2, (1, 1))
    t = random_tuple(p, 0)
    A = kronecker_sum(t)
    w = determinant_covector(p)
    M, gammas = krylov_matrix(A, w)
    assert M.shape == (4, 4)
    # undo the per-row scaling and compare to raw covector powers
    row = w.copy()
    for r in range(4):
        assert np.allclose(M[r] * math.exp(gammas[r]), row)
        row = row @ A


def test_krylov_matrix_dead_sequence():
    # nilpotent operator annihilating the covector quickly: rows stay zero
    A = np.array([[0.0, 1.0], [0.0, 0.0]])
    w = np.array([0.0, 1.0])
    M, _ = krylov_matrix(A, w)
    assert np.allclose(M[1], 0.0)


@pytest.mark.parametrize("k", [(1, 1), (1, 2)])
def test_determinant_routes_agree(k):
    p = Partition(sum(k), k)
    for seed in range(3):
        t = random_tuple(p, seed)
        lu = krylov_determinant(t)
        sp = spectral_determinant(t)
        assert abs(lu.log_mag - sp.log_mag) < 1e-6 * abs(sp.log_mag) + 1e-8
        assert abs(np.exp(1j * lu.phase) - np.exp(1j * sp.phase)) < 1e-6


def test_spectral_determinant_size_cap():
    t = random_tuple(Partition(4, (2, 2)), 0)
    with pytest.raises(TooLarge):
        spectral_determinant(t, size_cap=10)
    with pytest.raises(TooLarge):
        krylov_determinant(t, size_cap=10)


def test_certificate_degree_values():
    assert certificate_degree(Partition(2, (1, 1)), 0) == 2
    assert certificate_degree(Partition(2, (1, 1))) == 4
    p = Partition(3, (1, 2))
    assert certificate_degree(p, 0) == 3 * 1 * 3
    assert certificate_degree(p, 1) == 3 * 1 * 3
    # total degree n^n * C(n, 2) on the all-ones partition
    for n in (2, 3, 4):
        assert certificate_degree(Partition(n, (1,) * n)) == n**n * math.comb(n, 2)


@pytest.mark.parametrize("k", [(1, 1), (1, 2), (1, 1, 1)])
def test_homogeneity(k):
    p = Partition(sum(k), k)
    rng = np.random.default_rng(5)
    done = 0
    while done < 3:
        t = random_tuple(p, int(rng.integers(0, 2**63)))
        c = float(rng.uniform(0.5, 2.0))
        try:
            errs = [homogeneity_error(t, i, c) for i in range(p.l)]
        except NumericalFailure:
            continue
        done += 1
        for i, err in enumerate(errs):
            assert err < 1e-6 * certificate_degree(p, i)


def test_n2_closed_form_ratio():
    # at n = 2 the reduced certificate equals minus the commutator determinant
    p = Partition(2, (1, 1))
    for seed in range(5):
        t = random_tuple(p, seed)
        cert = reduced_certificate(t)
        a1, a2 = t.matrices
        want = -np.linalg.det(a1 @ a2 - a2 @ a1)
        assert np.isclose(cert.value.to_complex(), want)


def test_reduced_certificate_on_collision_locus():
    p = Partition(2, (1, 1))
    t = single_collision_tuple(p, SubPartition((1, 1)), 3)
    from tuplevar.certifier import DENOM_MARGIN_FLOOR

    cert = reduced_certificate(t)
    assert cert.ill_conditioned
    assert cert.denom_margin < DENOM_MARGIN_FLOOR
    # on the exact eigenvalues the engineered factor is identically zero
    from tuplevar.generators import collision_assignment
    from tuplevar.spectral import spectral_denominator

    lams = [np.asarray(e, dtype=complex) for e in collision_assignment(p, SubPartition((1, 1)))]
    assert spectral_denominator(lams, p).value.is_zero


def test_certify_random_generic():
    for k in [(1, 1), (1, 2), (1, 1, 1)]:
        t = random_tuple(Partition(sum(k), k), 11)
        v = certify(t, CFG)
        assert v.status is Status.GENERIC
        assert v.residual > v.scale - CFG.margin


def test_certify_planted_on_variety():
    for k in [(1, 1), (1, 2), (1, 1, 1)]:
        t, witness = on_variety_tuple(Partition(sum(k), k), 13)
        assert witness.sigma_min < 1e-7
        v = certify(t, CFG)
        assert v.status is Status.ON_VARIETY
        assert v.residual < v.scale - CFG.drop


def test_certify_scale_invariant():
    t = random_tuple(Partition(3, (1, 2)), 17)
    scaled = MatrixTuple(t.partition, tuple(m * c for m, c in zip(t.matrices, (7.0, 0.01))))
    a = certify(t, CFG)
    b = certify(scaled, CFG)
    assert a.status is b.status
    assert np.isclose(a.residual, b.residual, atol=1e-6)


def test_certify_repeated_eigenvalues_abstains():
    p = Partition(2, (1, 1))
    t = MatrixTuple(p, (np.eye(2), np.array([[0.0, 1.0], [1.0, 0.0]])))
    v = certify(t, CFG)
    assert v.status is Status.INDETERMINATE
    assert "gap" in v.notes["reason"]


def test_certify_deterministic():
    t = random_tuple(Partition(3, (1, 1, 1)), 23)
    a = certify(t, CFG)
    b = certify(t, CFG)
    assert a == b
