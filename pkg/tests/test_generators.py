import numpy as np
import pytest

from tuplevar import (
    GenerationFailure,
    InvalidPartition,
    Partition,
    SubPartition,
    collision_eigenvalues,
    on_variety_tuple,
    random_tuple,
    single_collision_tuple,
    verify_unique_collision,
)
from tuplevar.generators import collision_assignment, find_equal_sum_pairs


def test_random_tuple_deterministic_unit_norm():
    p = Partition(3, (1, 2))
    a = random_tuple(p, 42)
    b = random_tuple(p, 42)
    c = random_tuple(p, 43)
    for m1, m2 in zip(a.matrices, b.matrices):
        assert np.array_equal(m1, m2)
    assert not np.array_equal(a.matrices[0], c.matrices[0])
    for m in a.matrices:
        assert np.isclose(np.linalg.norm(m), 1.0)


def test_on_variety_tuple_plants_witness():
    p = Partition(3, (1, 1, 1))
    t, witness = on_variety_tuple(p, 0)
    assert witness.sigma_min < 1e-7
    assert witness.basis.shape == (3, 3)
    assert len(witness.choice) == 3
    # reproducible
    t2, w2 = on_variety_tuple(p, 0)
    assert np.array_equal(t.matrices[0], t2.matrices[0])
    assert witness.choice == w2.choice


def test_on_variety_rejects_full_subspace():
    with pytest.raises(GenerationFailure):
        on_variety_tuple(Partition(2, (2,)), 0)


def test_collision_eigenvalues_structure():
    vals = collision_eigenvalues(2, 6)
    assert len(vals) == 6
    assert vals[3] == -(2**4 - 2)
    assert vals[0] == -2 and vals[1] == 4 and vals[2] == -8
    with pytest.raises(InvalidPartition):
        collision_eigenvalues(2, 3)
    with pytest.raises(InvalidPartition):
        collision_eigenvalues(0, 4)


def test_find_equal_sum_pairs_powers_of_two():
    # distinct signed powers of two have no subset-sum collision at all
    assert find_equal_sum_pairs([(-2) ** m for m in range(1, 7)]) == []


@pytest.mark.parametrize("a,b", [(2, 4), (2, 6), (3, 8), (4, 12)])
def test_unique_collision(a, b):
    vals = collision_eigenvalues(a, b)
    s1, s2 = verify_unique_collision(vals, a)
    assert len(s1) == len(s2) == a
    assert not set(s1) & set(s2)
    assert sum(vals[i] for i in s1) == sum(vals[i] for i in s2)


def test_verify_unique_collision_rejects():
    with pytest.raises(GenerationFailure):
        verify_unique_collision([1, 2, 3], 1)  # 1+2 = 3 and more


def test_collision_assignment_realizes_collision():
    p = Partition(3, (1, 2))
    s = SubPartition((1, 1))
    assignment = collision_assignment(p, s)
    assert [len(e) for e in assignment] == [3, 3]
    flat = [x for eigs in assignment for x in eigs]
    assert len(set(flat)) == len(flat)
    # the two collision sides have equal sums across the tuple
    side1 = sum(eigs[0] for eigs, kp in zip(assignment, s.kprime) if kp)
    side2 = sum(eigs[kp] for eigs, kp in zip(assignment, s.kprime) if kp)
    assert side1 == side2


def test_collision_assignment_rejects():
    p = Partition(3, (1, 2))
    with pytest.raises(InvalidPartition):
        collision_assignment(p, SubPartition((1, 0)))  # weight < 2
    with pytest.raises(InvalidPartition):
        collision_assignment(p, SubPartition((0, 2)))  # 2 k' > n


def test_single_collision_tuple_spectrum():
    p = Partition(3, (1, 2))
    s = SubPartition((1, 1))
    t = single_collision_tuple(p, s, 0)
    assignment = collision_assignment(p, s)
    for m, eigs in zip(t.matrices, assignment):
        got = np.sort(np.linalg.eigvals(m).real)
        assert np.allclose(got, np.sort(np.asarray(eigs, dtype=float)), atol=1e-8)
