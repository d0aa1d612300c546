"""Acceptance checks runnable from the CLI and from the test suite.

Each criterion returns (ok, detail).  All randomness is derived from the
caller's seed, so a rerun with the same arguments reproduces every number.
"""

from __future__ import annotations

import math
import time
from itertools import combinations, product
from typing import Callable

import numpy as np

from .certifier import (
    CertifyConfig,
    Status,
    certificate_degree,
    certify,
    homogeneity_error,
    krylov_matrix,
    reduced_certificate,
    spectral_determinant,
)
from .errors import NumericalFailure
from .generators import (
    collision_eigenvalues,
    on_variety_tuple,
    random_tuple,
    single_collision_tuple,
    verify_unique_collision,
)
from .multilinear import MatrixTuple, Partition, determinant_covector, kronecker_sum, pair_with_decomposable
from .numerics import numerical_rank
from .oracle import ORACLE_ZERO, agree, oracle_detect
from .spectral import SubPartition, collision_factor, exponent, fg_pairs, sub_partitions


def membership_partitions(max_n: int) -> list[Partition]:
    """Partitions exercised by the zero-set criterion (trivial l=1 excluded)."""
    parts = [Partition(2, (1, 1))]
    if max_n >= 3:
        parts += [Partition(3, (1, 2)), Partition(3, (1, 1, 1))]
    if max_n >= 4:
        parts += [Partition(4, (1, 1, 1, 1)), Partition(4, (2, 2))]
    return parts


def all_partitions(n: int) -> list[Partition]:
    """All partitions of n with non-increasing parts (including the trivial one)."""
    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    return [Partition(n, k) for k in rec(n, n)]


def _seeds(seed: int, count: int) -> list[int]:
    rng = np.random.default_rng(seed)
    return [int(x) for x in rng.integers(0, 2**63, size=count)]


def criterion_zero_set(max_n: int = 4, samples: int = 50, seed: int = 0) -> tuple[bool, str]:
    """On-variety tuples certify on-variety, random tuples generic, oracle agrees."""
    failures = []
    total = 0
    for p in membership_partitions(max_n):
        cfg = CertifyConfig(seed=seed)
        for j, s in enumerate(_seeds(seed + hash(p.k) % 1000, 2 * samples)):
            planted = j < samples
            if planted:
                t, _ = on_variety_tuple(p, s)
                expected = Status.ON_VARIETY
            else:
                t = random_tuple(p, s)
                expected = Status.GENERIC
            v = certify(t, cfg)
            total += 1
            if v.status is not expected:
                failures.append(f"{p.k} sample {j}: got {v.status.value}, expected {expected.value}")
                continue
            if not agree(v, oracle_detect(t)):
                failures.append(f"{p.k} sample {j}: certifier and oracle disagree")
    detail = f"{total} tuples, {len(failures)} misclassified"
    if failures:
        detail += "; first: " + failures[0]
    return not failures, detail


def _charged_sub_partitions(p: Partition) -> list[SubPartition]:
    out = []
    for s in sub_partitions(p, min_weight=2):
        if exponent(p, s) > 0 and all(2 * kp <= p.n for kp in s.kprime):
            out.append(s)
    return out


def criterion_kernel_deficiency(seed: int = 0, max_n: int = 3) -> tuple[bool, str]:
    """Collision tuples give rank(M) <= N - exponent at tolerance 1e-8."""
    failures = []
    checked = 0
    for p in membership_partitions(min(max_n, 3)):
        if p.n > 3:
            continue
        for s in _charged_sub_partitions(p):
            t = single_collision_tuple(p, s, seed + checked)
            A = kronecker_sum(t)
            w = determinant_covector(p)
            M, _ = krylov_matrix(A, w)
            rank = numerical_rank(M, 1e-8)
            bound = p.size - exponent(p, s)
            checked += 1
            if rank > bound:
                failures.append(f"{p.k} k'={s.kprime}: rank {rank} > {bound}")
    detail = f"{checked} collision tuples checked"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def homogeneity_partitions(max_n: int) -> list[Partition]:
    parts = membership_partitions(max_n)
    if max_n >= 4:
        parts += [Partition(4, (1, 3)), Partition(4, (1, 1, 2))]
    return parts


def criterion_degree_formulas(max_n: int = 4, seed: int = 0) -> tuple[bool, str]:
    """Multihomogeneity at the predicted per-matrix degrees; total degree identity."""
    failures = []
    checks = 0
    for n in range(2, max_n + 1):
        ones = Partition(n, (1,) * n)
        if certificate_degree(ones) != n**n * math.comb(n, 2):
            failures.append(f"total degree mismatch at k=(1,)*{n}")
    for p in homogeneity_partitions(max_n):
        rng = np.random.default_rng(seed + p.size)
        done = 0
        attempts = 0
        while done < 10 and attempts < 40:
            attempts += 1
            t = random_tuple(p, int(rng.integers(0, 2**63)))
            c = float(rng.uniform(0.5, 2.0))
            try:
                errs = [
                    homogeneity_error(t, i, c) / certificate_degree(p, i)
                    for i in range(p.l)
                ]
            except NumericalFailure:
                continue
            done += 1
            checks += p.l
            bad = [e for e in errs if not e < 1e-6]
            if bad:
                failures.append(f"{p.k}: relative error {max(bad):.2e}")
        if done < 10:
            failures.append(f"{p.k}: only {done}/10 well-conditioned tuples")
    detail = f"{checks} homogeneity checks"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def criterion_joint_homogeneity(max_n: int = 3, seed: int = 0) -> tuple[bool, str]:
    """Scaling every matrix by c shifts log|P| by C(N,2) ln c."""
    failures = []
    checks = 0
    for p in membership_partitions(min(max_n, 3)):
        if p.n > 3:
            continue
        rng = np.random.default_rng(seed + p.size)
        deg = math.comb(p.size, 2)
        for _ in range(10):
            t = random_tuple(p, int(rng.integers(0, 2**63)))
            c = float(rng.uniform(0.5, 2.0))
            base = spectral_determinant(t)
            scaled_t = MatrixTuple(p, tuple(m * c for m in t.matrices))
            scaled = spectral_determinant(scaled_t)
            if base.is_zero or scaled.is_zero:
                continue
            err = abs(scaled.log_mag - base.log_mag - deg * math.log(c))
            checks += 1
            if not err / deg < 1e-6:
                failures.append(f"{p.k}: relative error {err / deg:.2e}")
    detail = f"{checks} joint-scaling checks"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def _predicted_spectrum(t: MatrixTuple) -> np.ndarray:
    p = t.partition
    per = [
        [sum(np.linalg.eigvals(m)[list(S)]) for S in combinations(range(p.n), ki)]
        for m, ki in zip(t.matrices, p.k)
    ]
    return np.array([sum(combo) for combo in product(*per)])


def criterion_kronecker_spectrum(max_n: int = 4, seed: int = 0) -> tuple[bool, str]:
    """Spectrum of the induced operator equals all k_i-fold eigenvalue sums."""
    failures = []
    for n in range(2, max_n + 1):
        for p in all_partitions(n):
            t = random_tuple(p, seed + n)
            A = kronecker_sum(t)
            actual = np.linalg.eigvals(A)
            predicted = _predicted_spectrum(t)
            tol = 1e-7 * np.linalg.norm(A, 2)
            # greedy nearest matching; generic random spectra are well separated
            remaining = list(actual)
            worst = 0.0
            for mu in predicted:
                dists = [abs(mu - x) for x in remaining]
                j = int(np.argmin(dists))
                worst = max(worst, dists[j])
                remaining.pop(j)
            if worst > tol:
                failures.append(f"{p.k}: max eigenvalue mismatch {worst:.2e} > {tol:.2e}")
    detail = f"partitions up to n={max_n}"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def criterion_pairing(max_n: int = 4, samples: int = 100, seed: int = 0) -> tuple[bool, str]:
    """Covector pairing with a decomposable tensor equals the plain determinant."""
    failures = []
    checks = 0
    for n in range(2, max_n + 1):
        for p in all_partitions(n):
            w = determinant_covector(p)
            rng = np.random.default_rng(seed + p.size)
            for _ in range(samples):
                groups = [
                    (rng.standard_normal((n, ki)) + 1j * rng.standard_normal((n, ki)))
                    for ki in p.k
                ]
                got = pair_with_decomposable(p, w, groups)
                want = np.linalg.det(np.hstack(groups))
                checks += 1
                if abs(got - want) > 1e-12 * max(abs(want), 1e-30):
                    failures.append(
                        f"{p.k}: relative error {abs(got - want) / abs(want):.2e}"
                    )
                    break
    detail = f"{checks} random families"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def criterion_n2_closed_form(seed: int = 0) -> tuple[bool, str]:
    """At n=2 the certificate is proportional to det of the commutator."""
    p = Partition(2, (1, 1))
    rng = np.random.default_rng(seed)
    ratios = []
    while len(ratios) < 10:
        t = random_tuple(p, int(rng.integers(0, 2**63)))
        cert = reduced_certificate(t)
        if cert.ill_conditioned or cert.value.is_zero:
            continue
        a1, a2 = t.matrices
        comm = np.linalg.det(a1 @ a2 - a2 @ a1)
        ratios.append(cert.value.to_complex() / comm)
    ratios = np.array(ratios)
    rel_std = float(np.std(ratios) / abs(np.mean(ratios)))
    ok = rel_std < 1e-6
    # zero-set agreement, independently confirmed by the oracle
    cfg = CertifyConfig(seed=seed)
    for j in range(5):
        t, _ = on_variety_tuple(p, seed + 100 + j)
        if not agree(certify(t, cfg), oracle_detect(t)):
            return False, "oracle disagreement on a planted n=2 pair"
        t = random_tuple(p, seed + 200 + j)
        if not agree(certify(t, cfg), oracle_detect(t)):
            return False, "oracle disagreement on a random n=2 pair"
    return ok, f"ratio relative std {rel_std:.2e}"


def criterion_permutation_invariance(max_n: int = 4, seed: int = 0) -> tuple[bool, str]:
    """Weight >= 2 collision factors are invariant under per-matrix eigenvalue permutations."""
    failures = []
    checks = 0
    for n in range(2, max_n + 1):
        for p in all_partitions(n):
            rng = np.random.default_rng(seed + p.size + n)
            lams = [rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(p.l)]
            for s in sub_partitions(p, min_weight=2):
                if not fg_pairs(p, s):
                    continue
                base = collision_factor(lams, p, s)
                for _ in range(20):
                    shuffled = [lam[rng.permutation(n)] for lam in lams]
                    val = collision_factor(shuffled, p, s)
                    checks += 1
                    delta = abs(
                        (val / base).to_complex() - 1.0
                    ) if not base.is_zero else math.inf
                    if delta > 1e-8:
                        failures.append(f"{p.k} k'={s.kprime}: deviation {delta:.2e}")
                        break
    detail = f"{checks} permutations"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


def criterion_collision_uniqueness(max_n: int = 4) -> tuple[bool, str]:
    """The engineered eigenvalue sets have exactly one equal-sum disjoint pair."""
    pairs = set()
    for p in membership_partitions(max_n):
        b = p.n * p.l
        if b > 16:
            continue
        for s in _charged_sub_partitions(p):
            if s.weight <= 4:
                pairs.add((s.weight, b))
    failures = []
    for a, b in sorted(pairs):
        try:
            verify_unique_collision(collision_eigenvalues(a, b), a)
        except Exception as e:  # noqa: BLE001 - report any failure verbatim
            failures.append(f"(a={a}, b={b}): {e}")
    detail = f"{len(pairs)} (a, b) combinations"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return not failures, detail


CRITERIA: list[tuple[str, Callable[..., tuple[bool, str]]]] = [
    ("1-zero-set", criterion_zero_set),
    ("2-kernel-deficiency", criterion_kernel_deficiency),
    ("3-degree-formulas", criterion_degree_formulas),
    ("4-joint-homogeneity", criterion_joint_homogeneity),
    ("5-kronecker-spectrum", criterion_kronecker_spectrum),
    ("6-determinant-pairing", criterion_pairing),
    ("7-n2-closed-form", criterion_n2_closed_form),
    ("8-permutation-invariance", criterion_permutation_invariance),
    ("9-collision-uniqueness", criterion_collision_uniqueness),
]


def run_selftest(max_n: int = 3, samples: int = 50, seed: int = 0, out=print) -> bool:
    """Run every criterion; one line per criterion with timing."""
    all_ok = True
    for name, fn in CRITERIA:
        kwargs = {}
        params = fn.__code__.co_varnames[: fn.__code__.co_argcount]
        if "max_n" in params:
            kwargs["max_n"] = max_n
        if "samples" in params:
            kwargs["samples"] = samples
        if "seed" in params:
            kwargs["seed"] = seed
        start = time.perf_counter()
        try:
            ok, detail = fn(**kwargs)
        except Exception as e:  # noqa: BLE001 - a crash is a failure, not an abort
            ok, detail = False, f"raised {type(e).__name__}: {e}"
        elapsed = time.perf_counter() - start
        out(f"{'PASS' if ok else 'FAIL'} criterion-{name} ({elapsed:.1f}s): {detail}")
        all_ok = all_ok and ok
    return all_ok
