"""Command-line front end.

Subcommands: certify, oracle, eval, gen, selftest.  Tuple documents are JSON
on stdin/stdout (see documents.py).  Exit codes are the machine contract:
0 = generic / success, 10 = on variety, 20 = indeterminate / abstention,
1 = input error, 2 = generation failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .certifier import (
    CertifyConfig,
    Status,
    certificate_degree,
    certify,
    krylov_determinant,
    reduced_certificate,
)
from .documents import document_to_tuple, dumps, loads, tuple_to_document
from .errors import (
    DocumentError,
    GenerationFailure,
    NonDiagonalizable,
    TuplevarError,
)
from .generators import on_variety_tuple, random_tuple, single_collision_tuple
from .multilinear import DEFAULT_SIZE_CAP, Partition
from .numerics import LogComplex, eigendecomposition
from .oracle import ORACLE_ZERO, oracle_detect
from .selftest import run_selftest
from .spectral import SubPartition, collision_factor, exponent, sub_partitions

EXIT_GENERIC = 0
EXIT_INPUT_ERROR = 1
EXIT_GENERATION_FAILURE = 2
EXIT_ON_VARIETY = 10
EXIT_INDETERMINATE = 20

ENV_PREFIX = "TUPLEVAR_"


def _env(name: str, cast, default):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise DocumentError(f"environment variable {ENV_PREFIX + name}={raw!r} is not a valid {cast.__name__}")


def _config(args: argparse.Namespace) -> CertifyConfig:
    # precedence: flags > environment > built-in defaults
    defaults = CertifyConfig()
    return CertifyConfig(
        drop=args.tolerance_drop
        if args.tolerance_drop is not None
        else _env("DROP", float, defaults.drop),
        margin=args.margin
        if args.margin is not None
        else _env("MARGIN", float, defaults.margin),
        gap_tol=args.gap_tol
        if args.gap_tol is not None
        else _env("GAP_TOL", float, defaults.gap_tol),
        calibration_samples=args.calibration_samples
        if args.calibration_samples is not None
        else _env("CALIBRATION_SAMPLES", int, defaults.calibration_samples),
        seed=args.seed if args.seed is not None else _env("SEED", int, defaults.seed),
        size_cap=args.size_cap
        if args.size_cap is not None
        else _env("SIZE_CAP", int, defaults.size_cap),
    )


def _read_document(args: argparse.Namespace) -> dict:
    if args.input and args.input != "-":
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    return loads(text)


def _logcomplex_report(value: LogComplex) -> dict:
    if value.is_zero:
        return {"zero": True}
    return {
        "zero": False,
        "log10_magnitude": value.log10_mag,
        "phase": value.phase,
    }


def _emit(report: dict) -> None:
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


def cmd_certify(args: argparse.Namespace) -> int:
    t = document_to_tuple(_read_document(args))
    cfg = _config(args)
    spectra = [eigendecomposition(m) for m in t.matrices]
    v = certify(t, cfg)
    _emit(
        {
            "verdict": v.status.value,
            "residual": v.residual,
            "calibration_scale": v.scale,
            "denominator_margin": v.denom_margin,
            "eigenvalue_gaps": [s.min_gap for s in spectra],
            "seed": cfg.seed,
            "notes": v.notes.get("reason", ""),
        }
    )
    return {
        Status.GENERIC: EXIT_GENERIC,
        Status.ON_VARIETY: EXIT_ON_VARIETY,
        Status.INDETERMINATE: EXIT_INDETERMINATE,
    }[v.status]


def cmd_oracle(args: argparse.Namespace) -> int:
    t = document_to_tuple(_read_document(args))
    cfg = _config(args)
    try:
        result = oracle_detect(t, gap_tol=cfg.gap_tol)
    except NonDiagonalizable as e:
        _emit({"verdict": "indeterminate", "reason": str(e)})
        return EXIT_INDETERMINATE
    on_variety = result.min_sigma < ORACLE_ZERO
    _emit(
        {
            "verdict": "on_variety" if on_variety else "generic",
            "min_sigma": result.min_sigma,
            "witness_choice": [list(s) for s in result.witness.choice],
        }
    )
    return EXIT_ON_VARIETY if on_variety else EXIT_GENERIC


def _parse_sub_partition(raw: str, p: Partition) -> SubPartition:
    try:
        kprime = tuple(int(x) for x in raw.split(","))
        s = SubPartition(kprime)
        if len(kprime) != p.l or any(kp > ki for kp, ki in zip(kprime, p.k)):
            raise ValueError
        return s
    except (ValueError, TuplevarError):
        raise DocumentError(f"invalid sub-partition {raw!r} for partition {p.k}")


def cmd_eval(args: argparse.Namespace) -> int:
    t = document_to_tuple(_read_document(args))
    p = t.partition
    cfg = _config(args)
    which = args.which
    if which == "degrees":
        _emit(
            {
                "per_matrix": [certificate_degree(p, i) for i in range(p.l)],
                "total": certificate_degree(p),
            }
        )
        return EXIT_GENERIC
    if which == "P":
        value = krylov_determinant(t, size_cap=cfg.size_cap)
        _emit({"P": _logcomplex_report(value)})
        return EXIT_GENERIC
    if which == "D":
        spectra = [eigendecomposition(m) for m in t.matrices]
        if args.sub_partition:
            subs = [_parse_sub_partition(args.sub_partition, p)]
        else:
            subs = sub_partitions(p, min_weight=1)
        _emit(
            {
                "D": [
                    {
                        "sub_partition": list(s.kprime),
                        "exponent": exponent(p, s),
                        "value": _logcomplex_report(collision_factor(spectra, p, s)),
                    }
                    for s in subs
                ]
            }
        )
        return EXIT_GENERIC
    # which == "Phat"
    cert = reduced_certificate(t, size_cap=cfg.size_cap)
    _emit(
        {
            "Phat": _logcomplex_report(cert.value),
            "denominator_margin": cert.denom_margin,
            "ill_conditioned": cert.ill_conditioned,
        }
    )
    return EXIT_GENERIC


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        p = Partition(args.n, tuple(int(x) for x in args.partition.split(",")))
    except (ValueError, TuplevarError) as e:
        raise DocumentError(f"invalid partition: {e}")
    seed = args.seed if args.seed is not None else _env("SEED", int, 0)
    meta = {"seed": seed, "kind": args.kind}
    if args.kind == "random":
        t = random_tuple(p, seed)
    elif args.kind == "on-variety":
        t, witness = on_variety_tuple(p, seed)
        meta["planted_choice"] = [list(s) for s in witness.choice]
    else:  # collision
        if not args.sub_partition:
            raise DocumentError("gen collision requires --sub-partition")
        s = _parse_sub_partition(args.sub_partition, p)
        t = single_collision_tuple(p, s, seed)
        meta["sub_partition"] = list(s.kprime)
    sys.stdout.write(dumps(tuple_to_document(t, metadata=meta)))
    return EXIT_GENERIC


def cmd_selftest(args: argparse.Namespace) -> int:
    if args.samples is not None and args.samples < 1:
        print("samples must be >= 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    seed = args.seed if args.seed is not None else _env("SEED", int, 0)
    ok = run_selftest(
        max_n=args.max_n,
        samples=args.samples if args.samples is not None else 50,
        seed=seed,
    )
    return EXIT_GENERIC if ok else EXIT_INPUT_ERROR


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--input", default="-", help="tuple document file, or - for stdin")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--tolerance-drop", type=float, default=None)
    sub.add_argument("--margin", type=float, default=None)
    sub.add_argument("--gap-tol", type=float, default=None)
    sub.add_argument("--calibration-samples", type=int, default=None)
    sub.add_argument("--size-cap", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tuplevar",
        description=(
            "Certify whether a tuple of complex matrices admits invariant "
            "subspaces of prescribed dimensions that fail to span the space."
        ),
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    c = subs.add_parser("certify", help="variety-membership verdict for a tuple document")
    _add_common(c)
    c.set_defaults(fn=cmd_certify)

    o = subs.add_parser("oracle", help="brute-force eigenvector-stacking detector")
    _add_common(o)
    o.set_defaults(fn=cmd_oracle)

    e = subs.add_parser("eval", help="print determinant/factor values and degrees")
    _add_common(e)
    e.add_argument("--which", choices=["P", "D", "Phat", "degrees"], required=True)
    e.add_argument("--sub-partition", default=None, help="comma-separated k' values")
    e.set_defaults(fn=cmd_eval)

    g = subs.add_parser("gen", help="emit a seeded test tuple document")
    g.add_argument("kind", choices=["random", "on-variety", "collision"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--partition", required=True, help="comma-separated parts summing to n")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--sub-partition", default=None, help="required for collision tuples")
    g.set_defaults(fn=cmd_gen)

    s = subs.add_parser("selftest", help="run the acceptance criteria")
    s.add_argument("--max-n", type=int, default=3)
    s.add_argument("--samples", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.set_defaults(fn=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except DocumentError as e:
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except GenerationFailure as e:
        print(f"generation failure: {e}", file=sys.stderr)
        return EXIT_GENERATION_FAILURE
    except TuplevarError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
