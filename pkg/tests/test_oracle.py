import math

import numpy as np
import pytest

from tuplevar import (
    NonDiagonalizable,
    Partition,
    Status,
    Verdict,
    agree,
    invariant_subspaces,
    on_variety_tuple,
    oracle_detect,
    random_tuple,
)
from tuplevar.numerics import eigendecomposition
from tuplevar.oracle import ORACLE_ZERO, stack_choice


def test_invariant_subspaces_enumeration():
    spec = eigendecomposition(np.diag([1.0, 2.0, 4.0]))
    subs = invariant_subspaces(spec, 2)
    assert subs == [(1, 2), (1, 3), (2, 3)]


def test_invariant_subspaces_refuses_repeated():
    spec = eigendecomposition(np.eye(3))
    with pytest.raises(NonDiagonalizable):
        invariant_subspaces(spec, 1)


def test_stack_choice_columns():
    p = Partition(3, (1, 2))
    t = random_tuple(p, 0)
    spectra = [eigendecomposition(m) for m in t.matrices]
    basis = stack_choice(spectra, ((2,), (1, 3)))
    assert basis.shape == (3, 3)
    assert np.allclose(basis[:, 0], spectra[0].eigenvectors[:, 1])
    assert np.allclose(basis[:, 1:], spectra[1].eigenvectors[:, [0, 2]])


@pytest.mark.parametrize("k", [(1, 1), (1, 2), (1, 1, 1)])
def test_oracle_separates_planted_from_random(k):
    p = Partition(sum(k), k)
    planted, witness = on_variety_tuple(p, 5)
    res = oracle_detect(planted)
    assert res.min_sigma < ORACLE_ZERO
    # the planted witness choice should achieve (near) the minimum
    assert res.min_sigma <= witness.sigma_min + 1e-12

    generic = random_tuple(p, 6)
    assert oracle_detect(generic).min_sigma > ORACLE_ZERO


def test_oracle_raises_on_degenerate_spectrum():
    p = Partition(2, (1, 1))
    from tuplevar import MatrixTuple

    t = MatrixTuple(p, (np.eye(2), np.diag([1.0, 2.0])))
    with pytest.raises(NonDiagonalizable):
        oracle_detect(t)


def test_agree_semantics():
    on = Verdict(Status.ON_VARIETY, -100.0, 0.0, 0.0)
    gen = Verdict(Status.GENERIC, -1.0, 0.0, 0.0)
    ind = Verdict(Status.INDETERMINATE, math.nan, math.nan, math.nan)
    p = Partition(2, (1, 1))
    hit = oracle_detect(on_variety_tuple(p, 1)[0])
    miss = oracle_detect(random_tuple(p, 2))
    assert agree(on, hit) and not agree(on, miss)
    assert agree(gen, miss) and not agree(gen, hit)
    assert agree(ind, hit) and agree(ind, miss)
