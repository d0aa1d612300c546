"""Full-scale acceptance run: every criterion at its stated tolerances.

One test (and one printed PASS/FAIL line) per criterion.  Run with
``pytest -v tests/test_acceptance.py`` to see the per-criterion lines; the
same battery is available from the command line as ``tuplevar selftest
--max-n 4``.
"""

import time

import pytest

from tuplevar.selftest import CRITERIA

MAX_N = 4
SAMPLES = 50
SEED = 0


@pytest.mark.parametrize("name,fn", CRITERIA, ids=[name for name, _ in CRITERIA])
def test_criterion(name, fn):
    kwargs = {}
    params = fn.__code__.co_varnames[: fn.__code__.co_argcount]
    if "max_n" in params:
        kwargs["max_n"] = MAX_N
    if "samples" in params:
        kwargs["samples"] = SAMPLES
    if "seed" in params:
        kwargs["seed"] = SEED
    start = time.perf_counter()
    ok, detail = fn(**kwargs)
    elapsed = time.perf_counter() - start
    print(f"{'PASS' if ok else 'FAIL'} criterion-{name} ({elapsed:.1f}s): {detail}")
    assert ok, f"criterion-{name}: {detail}"
