import math

import numpy as np
import pytest

from tuplevar import (
    InvalidPartition,
    Partition,
    SubPartition,
    collision_factor,
    exponent,
    fg_pairs,
    spectral_denominator,
    sub_partitions,
)
from tuplevar.spectral import validate_sub_partition


def test_sub_partition_validation():
    assert SubPartition((1, 0, 2)).weight == 3
    with pytest.raises(InvalidPartition):
        SubPartition((0, 0))
    with pytest.raises(InvalidPartition):
        SubPartition((-1, 2))
    p = Partition(3, (1, 2))
    with pytest.raises(InvalidPartition):
        validate_sub_partition(p, SubPartition((1, 1, 1)))
    with pytest.raises(InvalidPartition):
        validate_sub_partition(p, SubPartition((2, 0)))


def test_sub_partitions_enumeration():
    p = Partition(3, (1, 2))
    all_subs = sub_partitions(p)
    assert [s.kprime for s in all_subs] == [(0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
    heavy = sub_partitions(p, min_weight=2)
    assert [s.kprime for s in heavy] == [(0, 2), (1, 1), (1, 2)]


@pytest.mark.parametrize(
    "n,k,kprime",
    [(3, (1, 2), (1, 1)), (4, (2, 2), (1, 1)), (4, (2, 2), (2, 0)), (4, (1, 3), (1, 2))],
)
def test_fg_pairs_count(n, k, kprime):
    p = Partition(n, k)
    s = SubPartition(kprime)
    count = 1
    for kp in kprime:
        count *= math.comb(n, kp) * math.comb(n - kp, kp)
    pairs = fg_pairs(p, s)
    assert len(pairs) == count // 2
    lead = next(i for i, kp in enumerate(kprime) if kp)
    seen = set()
    for F, G in pairs:
        # orientation and disjointness per coordinate
        assert min(F[lead]) < min(G[lead])
        for Fi, Gi in zip(F, G):
            assert not set(Fi) & set(Gi)
        assert (F, G) not in seen and (G, F) not in seen
        seen.add((F, G))


def test_fg_pairs_empty_when_too_large():
    p = Partition(3, (1, 2))
    assert fg_pairs(p, SubPartition((0, 2))) == []


def test_collision_factor_value():
    # k = (1, 1), k' = (1, 1): single oriented pair (F={1},{1}), (G={2},{2})
    p = Partition(2, (1, 1))
    s = SubPartition((1, 1))
    lams = [np.array([1.0, 4.0]), np.array([2.0, 7.0])]
    pairs = fg_pairs(p, s)
    assert len(pairs) == 2
    want = ((1 - 4) + (2 - 7)) * ((1 - 4) + (7 - 2))
    got = collision_factor(lams, p, s).to_complex()
    assert np.isclose(got, want)


def test_collision_factor_zero_and_empty():
    p = Partition(2, (1, 1))
    s = SubPartition((1, 1))
    lams = [np.array([0.0, 1.0]), np.array([0.0, 1.0])]
    assert collision_factor(lams, p, s).is_zero
    # empty pair set gives the empty product
    p3 = Partition(3, (1, 2))
    assert np.isclose(
        collision_factor([np.arange(3), np.arange(3)], p3, SubPartition((0, 2))).to_complex(),
        1.0,
    )


@pytest.mark.parametrize(
    "n,k,kprime,want",
    [
        (2, (1, 1), (1, 1), 1),
        (3, (1, 2), (1, 1), 1),
        (3, (1, 2), (1, 2), 0),       # n - 2k' < 0 in the second slot
        (4, (2, 2), (1, 1), 4),
        (4, (2, 2), (2, 2), 1),
        (4, (1, 1, 2), (1, 1, 0), math.comb(2, 0) * math.comb(2, 0) * math.comb(4, 2)),
    ],
)
def test_exponent_values(n, k, kprime, want):
    p = Partition(n, k)
    assert exponent(p, SubPartition(kprime)) == want


def test_degree_identity():
    # every Vandermonde factor of the Krylov determinant belongs to exactly
    # one sub-partition, with multiplicity equal to the exponent; the weight-1
    # layer alone accounts for the certificate degree.  Checked for every
    # partition of 3 and 4.
    from tuplevar.certifier import certificate_degree
    from tuplevar.selftest import all_partitions

    for n in (3, 4):
        for p in all_partitions(n):
            by_weight = {}
            for s in sub_partitions(p, min_weight=1):
                cnt = exponent(p, s) * len(fg_pairs(p, s))
                by_weight[s.weight] = by_weight.get(s.weight, 0) + cnt
            assert sum(by_weight.values()) == p.size * (p.size - 1) // 2
            assert by_weight.get(1, 0) == certificate_degree(p)


def test_spectral_denominator_matches_factor_product():
    p = Partition(3, (1, 2))
    rng = np.random.default_rng(0)
    lams = [rng.standard_normal(3) + 1j * rng.standard_normal(3) for _ in range(2)]
    den = spectral_denominator(lams, p)
    log_mag, phase = 0.0, 0.0
    min_factor = math.inf
    for s in sub_partitions(p, min_weight=2):
        e = exponent(p, s)
        if e == 0:
            continue
        f = collision_factor(lams, p, s)
        log_mag += e * f.log_mag
    assert np.isclose(den.value.log_mag, log_mag)
    assert den.min_factor_log < math.inf
    assert den.vanished is None


def test_spectral_denominator_vanishing():
    from tuplevar import single_collision_tuple
    from tuplevar.generators import collision_assignment

    p = Partition(3, (1, 2))
    s = SubPartition((1, 1))
    lams = [np.asarray(e, dtype=complex) for e in collision_assignment(p, s)]
    den = spectral_denominator(lams, p)
    assert den.value.is_zero
    assert den.min_factor_log == -math.inf
    assert den.vanished is not None
