"""Command-line front end.

Every command is a thin adapter over the library: load JSON inputs, call one
library operation, write a deterministic JSON report (and CSV decay tables
where applicable).  Exit status is 0 on pass/success, 1 on a verification or
certification failure, 2 on an input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import asymptotics, serialize
from .asymptotics import ApproachRegion, certify_expansion, default_s_values, extract_residues, type1_limit
from .examples import build_example, closed_form_evaluator
from .hankel_pair import VerificationError, hamburger_1d, kronecker_rank, verify_hankel_pair
from .realization import (
    RealizationError,
    compress,
    evaluate,
    evaluator,
    gram_of,
    realize,
    residues,
    scalar_moments,
)
from .serialize import SchemaError
from .tolerances import Tolerances


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hvms",
        description="Verify Hankel pairs, build and evaluate their realizations, "
        "and extract/certify asymptotic expansions at infinity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, needs_input: bool = True) -> argparse.ArgumentParser:
        cmd = sub.add_parser(name, help=help_text)
        if needs_input:
            cmd.add_argument("--input", required=True, help="input JSON file")
        cmd.add_argument("--output", help="write the JSON report/artifact here")
        cmd.add_argument("--tol-psd", type=float, help="positive semi-definiteness slack")
        cmd.add_argument("--tol-rank", type=float, help="relative rank cutoff")
        cmd.add_argument("--tol-decay", type=float, help="decay certification threshold")
        cmd.add_argument("--seed", type=int, default=0, help="seed for randomized helpers")
        return cmd

    def add_rays(cmd: argparse.ArgumentParser) -> None:
        cmd.add_argument("--rays", help='ray directions as "b1:b2,b1:b2,..."')
        cmd.add_argument("--smin", type=float, default=None)
        cmd.add_argument("--smax", type=float, default=None)
        cmd.add_argument("--sratio", type=float, default=None)
        cmd.add_argument(
            "--precision",
            type=int,
            default=30,
            help="target decimal digits for ray sampling (0 = plain float64)",
        )

    add("verify", "check the four Hankel-pair conditions")
    add("realize", "construct a realization from a verified pair")
    add("gram", "Gram pair of a realization")
    cmd = add("eval", "evaluate a realization at a point of the bi-upper half-plane")
    cmd.add_argument("--z", required=True, help='point as "re,im:re,im"')
    add("residues", "scalar moments and asymptotic residues of a realization")
    cmd = add("extract", "recover residues of a realization/example by ray sampling")
    add_rays(cmd)
    cmd.add_argument("--order", type=int, help="odd expansion order (default 2N-1)")
    cmd.add_argument("--csv", help="also write the decay table as CSV")
    cmd = add("certify", "certify a proposed expansion against an evaluator")
    add_rays(cmd)
    cmd.add_argument("--residues", dest="residues_path", required=True, help="JSON residue map")
    cmd.add_argument("--order", type=int, help="expansion order (default: cover the map)")
    cmd.add_argument("--csv", help="also write the decay table as CSV")
    add("compress", "rebuild a realization on a minimal-rank carrier")
    cmd = add("example", "build the block-family realization from a spec")
    cmd.add_argument("--order", type=int, default=2, help="realization size N (1 or 2)")
    add("hamburger1d", "one-variable Hankel moment test")
    cmd = add("type1", "diagonal limit s*h(is,is); finite iff a resolvent form exists")
    add_rays(cmd)
    cmd = add("pipeline", "verify -> realize -> residues -> certify, one combined report")
    add_rays(cmd)
    cmd.add_argument("--csv", help="also write the decay table as CSV")
    return parser


# ----------------------------------------------------------------------------
# Shared plumbing
# ----------------------------------------------------------------------------


def _tolerances(args: argparse.Namespace, base: Tolerances | None = None) -> Tolerances:
    tol = base if base is not None else Tolerances()
    overrides = {}
    if getattr(args, "tol_psd", None) is not None:
        overrides["psd"] = args.tol_psd
    if getattr(args, "tol_rank", None) is not None:
        overrides["rank"] = args.tol_rank
    if getattr(args, "tol_decay", None) is not None:
        overrides["decay"] = args.tol_decay
    return tol.replace(**overrides) if overrides else tol


def _parse_rays(text: str) -> list[tuple[float, float]]:
    rays = []
    for chunk in text.split(","):
        parts = chunk.strip().split(":")
        if len(parts) != 2:
            raise SchemaError(f'bad ray {chunk!r}; expected "b1:b2"')
        rays.append((float(parts[0]), float(parts[1])))
    return rays


def _s_values(args: argparse.Namespace, smax_default: float = 1e6) -> tuple[float, ...]:
    return default_s_values(
        args.smin if args.smin is not None else 1e2,
        args.smax if args.smax is not None else smax_default,
        args.sratio if args.sratio is not None else 10.0**0.25,
    )


def _regions(args: argparse.Namespace, order: int, smax_default: float = 1e6) -> list[ApproachRegion]:
    s = _s_values(args, smax_default)
    if args.rays:
        return [ApproachRegion(b, s) for b in _parse_rays(args.rays)]
    return list(asymptotics.default_regions(order, s))


def _precision(args: argparse.Namespace) -> int | None:
    p = getattr(args, "precision", 30)
    return None if p is not None and p <= 0 else p


def _parse_point(text: str) -> tuple[complex, complex]:
    parts = text.split(":")
    if len(parts) != 2:
        raise SchemaError(f'bad point {text!r}; expected "re,im:re,im"')
    out = []
    for part in parts:
        bits = part.split(",")
        if len(bits) != 2:
            raise SchemaError(f'bad coordinate {part!r}; expected "re,im"')
        out.append(complex(float(bits[0]), float(bits[1])))
    return out[0], out[1]


def _load_evaluator(path: str, tol: Tolerances) -> tuple[Callable, int]:
    """Load a realization or an example spec; return (callable, size N)."""
    obj = serialize.load_json(path)
    kind = obj.get("kind") if isinstance(obj, dict) else None
    if kind == "realization" or (isinstance(obj, dict) and "moments" in obj):
        r = serialize.realization_from_obj(obj)
        return evaluator(r), r.N
    if kind == "example_spec" or (isinstance(obj, dict) and "terms" in obj):
        spec = serialize.spec_from_obj(obj)
        return closed_form_evaluator(spec), 2
    raise SchemaError(f"{path}: expected a realization or an example spec")


def _emit(args: argparse.Namespace, report: dict) -> None:
    if args.output:
        serialize.dump(report, args.output)


def _fmt_complex(v: complex) -> str:
    return f"{v.real:g}{v.imag:+g}i"


# ----------------------------------------------------------------------------
# Command handlers
# ----------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    pair = serialize.pair_from_obj(serialize.load_json(args.input))
    pair = type(pair)(pair.N, pair.a1, pair.a2, _tolerances(args, pair.tol))
    report = verify_hankel_pair(pair)
    out = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": "verify",
        "N": pair.N,
        "kronecker_rank": kronecker_rank(pair),
    }
    out.update(serialize.verdict_obj(report))
    _emit(args, out)
    for c in report.conditions:
        status = "PASS" if c.passed else "FAIL"
        extra = " (vacuous)" if c.vacuous else f" (margin {c.margin:.3e})"
        print(f"{c.name}: {status}{extra}")
    print(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def _cmd_hamburger1d(args) -> int:
    moments = serialize.moments1d_from_obj(serialize.load_json(args.input))
    report = hamburger_1d(moments, _tolerances(args))
    out = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": "hamburger1d",
        "N": moments.N,
    }
    out.update(serialize.verdict_obj(report))
    _emit(args, out)
    for c in report.conditions:
        print(f"{c.name}: {'PASS' if c.passed else 'FAIL'}")
    print(f"verdict: {'PASS' if report.passed else 'FAIL'}")
    return 0 if report.passed else 1


def _cmd_realize(args) -> int:
    pair = serialize.pair_from_obj(serialize.load_json(args.input))
    pair = type(pair)(pair.N, pair.a1, pair.a2, _tolerances(args, pair.tol))
    try:
        r = realize(pair)
    except VerificationError as exc:
        out = {
            "schema_version": serialize.SCHEMA_VERSION,
            "command": "realize",
            "N": pair.N,
        }
        out.update(serialize.verdict_obj(exc.report))
        _emit(args, out)
        print(f"verification failed: {', '.join(exc.report.failing())}")
        return 1
    _emit(args, serialize.realization_obj(r))
    print(f"realized: dim={r.dim} N={r.N}")
    return 0


def _cmd_gram(args) -> int:
    r = serialize.realization_from_obj(serialize.load_json(args.input))
    _emit(args, serialize.pair_obj(gram_of(r)))
    print(f"gram pair: N={r.N} size={r.index_set and len(r.index_set)}")
    return 0


def _cmd_eval(args) -> int:
    r = serialize.realization_from_obj(serialize.load_json(args.input))
    z = _parse_point(args.z)
    try:
        value = evaluate(r, z)
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    out = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": "eval",
        "z": [serialize.complex_pair(z[0]), serialize.complex_pair(z[1])],
        "value": serialize.complex_pair(value),
    }
    _emit(args, out)
    print(f"h(z) = {_fmt_complex(value)}")
    return 0


def _cmd_residues(args) -> int:
    r = serialize.realization_from_obj(serialize.load_json(args.input))
    rho = residues(r)
    out = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": "residues",
        "order": 2 * r.N - 1,
        "residues": serialize.residues_obj(rho),
        "scalar_moments": serialize.scalar_moments_obj(scalar_moments(r)),
    }
    _emit(args, out)
    for key, val in serialize.residues_obj(rho).items():
        print(f"rho{key} = {val:.12g}")
    return 0


def _cmd_extract(args) -> int:
    h, N = _load_evaluator(args.input, _tolerances(args))
    if args.order is not None:
        if args.order % 2 == 0 or args.order < 1:
            raise SchemaError("--order must be a positive odd expansion order")
        N = (args.order + 1) // 2
    order = 2 * N - 1
    report = extract_residues(
        h, N, _regions(args, order), precision=_precision(args), tol=_tolerances(args)
    )
    out = {"schema_version": serialize.SCHEMA_VERSION, "command": "extract"}
    out.update(serialize.expansion_obj(report))
    _emit(args, out)
    if args.csv:
        asymptotics.write_decay_csv(report, args.csv)
    for key, val in serialize.residues_obj(report.residues).items():
        print(f"rho{key} = {val:.12g}")
    print(f"certified: {report.certified}")
    return 0


def _cmd_certify(args) -> int:
    h, N = _load_evaluator(args.input, _tolerances(args))
    rho = serialize.residues_from_obj(serialize.load_json(args.residues_path))
    if args.order is not None:
        order = args.order
    else:
        order = max(n[0] + n[1] for n in rho) if rho else 2 * N - 1
    regions = _regions(args, order)[:3] if not args.rays else _regions(args, order)
    report = certify_expansion(
        h, rho, order, regions, precision=_precision(args), tol=_tolerances(args)
    )
    out = {"schema_version": serialize.SCHEMA_VERSION, "command": "certify"}
    out.update(serialize.expansion_obj(report))
    _emit(args, out)
    if args.csv:
        asymptotics.write_decay_csv(report, args.csv)
    for v in report.ray_verdicts:
        print(
            f"ray b=({v.b[0]:g},{v.b[1]:g}): final scaled error {v.final_scaled_error:.3e}, "
            f"monotone={v.tail_monotone}"
        )
    print(f"certified: {report.certified}")
    return 0 if report.certified else 1


def _cmd_compress(args) -> int:
    r = serialize.realization_from_obj(serialize.load_json(args.input))
    small = compress(r)
    _emit(args, serialize.realization_obj(small))
    print(f"compressed: dim {r.dim} -> {small.dim}")
    return 0


def _cmd_example(args) -> int:
    spec = serialize.spec_from_obj(serialize.load_json(args.input))
    if args.order not in (1, 2):
        raise SchemaError("--order must be 1 or 2 for the example family")
    r = build_example(spec, args.order, _tolerances(args))
    _emit(args, serialize.realization_obj(r))
    print(f"example realization: dim={r.dim} N={r.N}")
    return 0


def _cmd_type1(args) -> int:
    h, _ = _load_evaluator(args.input, _tolerances(args))
    report = type1_limit(h, _s_values(args))
    out = {"schema_version": serialize.SCHEMA_VERSION, "command": "type1"}
    out.update(serialize.type1_obj(report))
    _emit(args, out)
    print(f"limit estimate: {_fmt_complex(report.estimate)}")
    print(f"type-I: {report.is_type1}")
    return 0 if report.is_type1 else 1


def _cmd_pipeline(args) -> int:
    pair = serialize.pair_from_obj(serialize.load_json(args.input))
    pair = type(pair)(pair.N, pair.a1, pair.a2, _tolerances(args, pair.tol))
    verdict = verify_hankel_pair(pair)
    out: dict = {
        "schema_version": serialize.SCHEMA_VERSION,
        "command": "pipeline",
        "verify": serialize.verdict_obj(verdict),
    }
    if not verdict.passed:
        out["passed"] = False
        _emit(args, out)
        print(f"pipeline: verification failed ({', '.join(verdict.failing())})")
        return 1
    r = realize(pair, verdict)
    rho = residues(r)
    order = 2 * r.N - 1
    # Residues carry float64 rounding (relative ~1e-16), which the scaled
    # error amplifies by s^(order-1); the default ray range is capped so that
    # floor stays below the decay tolerance for honestly valid inputs.
    regions = _regions(args, order, smax_default=1e5)
    if not args.rays:
        regions = regions[:3]
    cert = certify_expansion(
        evaluator(r), rho, order, regions, precision=_precision(args), tol=pair.tol
    )
    out["realization"] = {"dim": r.dim, "N": r.N}
    out["residues"] = serialize.residues_obj(rho)
    out["certify"] = serialize.expansion_obj(cert)
    out["passed"] = bool(cert.certified)
    _emit(args, out)
    if args.csv:
        asymptotics.write_decay_csv(cert, args.csv)
    print(f"pipeline: verified, dim={r.dim}, certified={cert.certified}")
    return 0 if cert.certified else 1


_HANDLERS = {
    "verify": _cmd_verify,
    "hamburger1d": _cmd_hamburger1d,
    "realize": _cmd_realize,
    "gram": _cmd_gram,
    "eval": _cmd_eval,
    "residues": _cmd_residues,
    "extract": _cmd_extract,
    "certify": _cmd_certify,
    "compress": _cmd_compress,
    "example": _cmd_example,
    "type1": _cmd_type1,
    "pipeline": _cmd_pipeline,
}


def run(args: argparse.Namespace) -> int:
    """Dispatch a parsed job; the exit-code contract lives here."""
    try:
        return _HANDLERS[args.command](args)
    except VerificationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except RealizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    raise SystemExit(main())
