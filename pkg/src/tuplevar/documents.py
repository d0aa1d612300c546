"""JSON tuple documents: the wire format of the command-line front end.

One document per file/stream:

    {
      "n": 2,
      "partition": [1, 1],
      "matrices": [[[[1.0, 0.0], [0.0, 0.0]], ...], ...],
      "metadata": {"seed": 7}
    }

Matrix entries are [re, im] pairs.  Serialization uses Python's shortest
round-trip float formatting, so parse(serialize(doc)) is bit-exact.
"""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

from .errors import DocumentError
from .multilinear import MatrixTuple, Partition


def tuple_to_document(t: MatrixTuple, metadata: dict | None = None) -> dict:
    doc: dict[str, Any] = {
        "n": t.partition.n,
        "partition": list(t.partition.k),
        "matrices": [
            [[[float(z.real), float(z.imag)] for z in row] for row in m]
            for m in t.matrices
        ],
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def document_to_tuple(doc: dict) -> MatrixTuple:
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("n", "partition", "matrices"):
        if key not in doc:
            raise DocumentError(f"missing required field '{key}'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise DocumentError(f"'n' must be a positive integer, got {n!r}")
    partition = doc["partition"]
    if (
        not isinstance(partition, list)
        or not partition
        or not all(isinstance(x, int) and x >= 1 for x in partition)
    ):
        raise DocumentError("'partition' must be a non-empty list of positive integers")
    if sum(partition) != n:
        raise DocumentError("partition must sum to n")
    matrices = doc["matrices"]
    if not isinstance(matrices, list) or len(matrices) != len(partition):
        raise DocumentError(
            f"'matrices' must list one matrix per partition part "
            f"({len(partition)} expected)"
        )
    mats = []
    for mi, m in enumerate(matrices):
        arr = np.zeros((n, n), dtype=complex)
        if not isinstance(m, list) or len(m) != n:
            raise DocumentError(f"matrix {mi} must have {n} rows")
        for r, row in enumerate(m):
            if not isinstance(row, list) or len(row) != n:
                raise DocumentError(f"matrix {mi} row {r} must have {n} entries")
            for c, entry in enumerate(row):
                if (
                    not isinstance(entry, list)
                    or len(entry) != 2
                    or not all(isinstance(x, (int, float)) for x in entry)
                ):
                    raise DocumentError(
                        f"matrix {mi} entry ({r},{c}) must be an [re, im] pair"
                    )
                if not all(math.isfinite(x) for x in entry):
                    raise DocumentError(
                        f"matrix {mi} entry ({r},{c}) must be finite"
                    )
                arr[r, c] = complex(entry[0], entry[1])
        mats.append(arr)
    return MatrixTuple(Partition(n, tuple(partition)), tuple(mats))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
