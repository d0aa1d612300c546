import numpy as np
import pytest

from tuplevar import DocumentError, Partition, random_tuple
from tuplevar.documents import (
    document_to_tuple,
    dumps,
    loads,
    tuple_to_document,
)


def test_round_trip_bit_exact():
    t = random_tuple(Partition(3, (1, 2)), 9)
    doc = tuple_to_document(t, metadata={"seed": 9})
    back = document_to_tuple(loads(dumps(doc)))
    assert back.partition == t.partition
    for m1, m2 in zip(back.matrices, t.matrices):
        assert np.array_equal(m1, m2)


def test_metadata_optional():
    t = random_tuple(Partition(2, (1, 1)), 0)
    assert "metadata" not in tuple_to_document(t)
    assert tuple_to_document(t, metadata={"kind": "random"})["metadata"] == {
        "kind": "random"
    }


def _valid_doc():
    return tuple_to_document(random_tuple(Partition(2, (1, 1)), 1))


@pytest.mark.parametrize(
    "mutate,fragment",
    [
        (lambda d: d.pop("n"), "missing required field"),
        (lambda d: d.update(n=0), "positive integer"),
        (lambda d: d.update(partition=[1, 2]), "sum to n"),
        (lambda d: d.update(partition=[]), "non-empty list"),
        (lambda d: d.update(partition=[1, 0, 1]), "positive integers"),
        (lambda d: d["matrices"].pop(), "one matrix per partition part"),
        (lambda d: d["matrices"][0].pop(), "must have 2 rows"),
        (lambda d: d["matrices"][0][0].pop(), "must have 2 entries"),
        (lambda d: d["matrices"][0][0].__setitem__(0, [1.0]), "[re, im] pair"),
        (lambda d: d["matrices"][0][0].__setitem__(0, [1.0, "x"]), "[re, im] pair"),
    ],
)
def test_validation_errors(mutate, fragment):
    doc = _valid_doc()
    mutate(doc)
    with pytest.raises(DocumentError, match=None) as exc:
        document_to_tuple(doc)
    assert fragment in str(exc.value)


def test_non_finite_rejected():
    doc = _valid_doc()
    doc["matrices"][0][0][0] = [float("nan"), 0.0]
    with pytest.raises(DocumentError, match="finite"):
        document_to_tuple(doc)


def test_loads_reports_position():
    with pytest.raises(DocumentError, match="line 1"):
        loads("{not json")
    with pytest.raises(DocumentError):
        document_to_tuple(loads("[1, 2]"))
