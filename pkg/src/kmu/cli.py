"""Command-line entry point.

One descriptor goes in, one machine-readable JSON report comes out on
stdout; the exit status is 0 exactly when every record in the report
passes.  Subcommands: verify, deform, submanifold, sweep, dump-tables.
Rationals appear as "p/q" strings everywhere; floats are rejected.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction

from .deformation import d_homothetic, predicted_invariants
from .errors import DescriptorError, KmuError
from .liealg import build_boeckx_model
from .linalg import rat, rat_str
from .pipeline import analyze_structure
from .report import LAMBDA_NOTE, all_passed
from .submanifold import analyze_submanifold, build_distribution

_DESCRIPTOR_KEYS = {"n", "alpha", "beta", "deformation_a", "submanifolds"}
_SUBMANIFOLD_KEYS = {"kind", "k", "z_choices", "c", "d"}


@dataclass(frozen=True)
class ModelDescriptor:
    n: int
    alpha: Fraction
    beta: Fraction
    deformation_a: Fraction | None = None
    submanifolds: tuple = ()


def _no_floats(obj, where="descriptor"):
    if isinstance(obj, float):
        raise DescriptorError(
            f"floating-point literal {obj!r} in {where}; use exact 'p/q' strings"
        )
    if isinstance(obj, dict):
        for key, value in obj.items():
            _no_floats(value, f"{where}.{key}")
    if isinstance(obj, list):
        for i, value in enumerate(obj):
            _no_floats(value, f"{where}[{i}]")


def parse_descriptor(data: dict) -> ModelDescriptor:
    """Validate the descriptor grammar and parse all rationals."""
    if not isinstance(data, dict):
        raise DescriptorError("descriptor must be a JSON object")
    _no_floats(data)
    unknown = set(data) - _DESCRIPTOR_KEYS
    if unknown:
        raise DescriptorError(f"unknown descriptor keys: {sorted(unknown)}")
    for key in ("n", "alpha", "beta"):
        if key not in data:
            raise DescriptorError(f"descriptor is missing required key {key!r}")
    if not isinstance(data["n"], int) or isinstance(data["n"], bool):
        raise DescriptorError(f"n must be an integer, got {data['n']!r}")

    subs = []
    for i, block in enumerate(data.get("submanifolds") or []):
        if not isinstance(block, dict):
            raise DescriptorError(f"submanifolds[{i}] must be an object")
        unknown = set(block) - _SUBMANIFOLD_KEYS
        if unknown:
            raise DescriptorError(
                f"unknown keys in submanifolds[{i}]: {sorted(unknown)}"
            )
        kind = block.get("kind")
        if kind == "diag":
            kind = "diagonal"
        sub = {
            "kind": kind,
            "k": block.get("k"),
            "z_choices": tuple(block["z_choices"]) if "z_choices" in block else None,
            "c": rat(block["c"]) if "c" in block else None,
            "d": rat(block["d"]) if "d" in block else None,
        }
        subs.append(sub)

    return ModelDescriptor(
        n=data["n"],
        alpha=rat(data["alpha"]),
        beta=rat(data["beta"]),
        deformation_a=rat(data["deformation_a"]) if "deformation_a" in data else None,
        submanifolds=tuple(subs),
    )


def load_descriptor(path: str) -> ModelDescriptor:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise DescriptorError(f"cannot read descriptor {path}: {exc}") from exc
    return parse_descriptor(data)


def _records_json(records):
    return [r.to_dict() for r in records]


def _deformation_block(analysis, a: Fraction) -> tuple[dict, bool]:
    model = analysis.model
    before = analysis.invariants
    deformed_cs, _ = d_homothetic(model, analysis.cs, a)
    deformed = analyze_structure(model, deformed_cs)
    kappa_t, mu_t = predicted_invariants(before.kappa, before.mu, a)
    match = deformed.invariants.kappa == kappa_t and deformed.invariants.mu == mu_t
    invariance = deformed.invariants.boeckx_invariant == before.boeckx_invariant
    records = list(deformed.records)
    block = {
        "a": rat_str(a),
        "before": before.to_dict(),
        "after": deformed.invariants.to_dict(),
        "predicted": {"kappa": rat_str(kappa_t), "mu": rat_str(mu_t)},
        "kappa_mu_match": "pass" if match else "fail",
        "boeckx_invariance": "pass" if invariance else "fail",
        "identities": _records_json(records),
    }
    ok = match and invariance and all_passed(records)
    return block, ok


def _submanifold_block(analysis, sub: dict) -> tuple[dict, bool]:
    spec = build_distribution(
        analysis.model,
        sub["kind"],
        k=sub.get("k"),
        z_choices=sub.get("z_choices"),
        c=sub.get("c"),
        d=sub.get("d"),
    )
    _, records, summary = analyze_submanifold(
        analysis.model,
        analysis.conn,
        analysis.curvature,
        analysis.cs,
        analysis.invariants,
        spec,
    )
    block = dict(summary)
    block["identities"] = _records_json(records)
    return block, all_passed(records)


def build_report(desc: ModelDescriptor, deformation_a: Fraction | None = None) -> dict:
    """Assemble the full verification report for one descriptor."""
    model = build_boeckx_model(desc.n, desc.alpha, desc.beta)
    analysis = analyze_structure(model)
    ok = analysis.passed

    report = {
        "model": {
            "n": desc.n,
            "alpha": rat_str(desc.alpha),
            "beta": rat_str(desc.beta),
        },
        "invariants": analysis.invariants.to_dict(),
        "identities": _records_json(analysis.records),
    }

    a = deformation_a if deformation_a is not None else desc.deformation_a
    if a is not None:
        block, block_ok = _deformation_block(analysis, a)
        report["deformation"] = block
        ok = ok and block_ok

    if desc.submanifolds:
        blocks = []
        for sub in desc.submanifolds:
            block, block_ok = _submanifold_block(analysis, sub)
            blocks.append(block)
            ok = ok and block_ok
        report["submanifolds"] = blocks

    report["notes"] = [LAMBDA_NOTE]
    report["pass"] = ok
    report["generated_at"] = datetime.now(timezone.utc).isoformat()
    return report


def _sweep_point(n: int, alpha: Fraction, beta: Fraction) -> dict:
    model = build_boeckx_model(n, alpha, beta)
    analysis = analyze_structure(model)
    inv = analysis.invariants
    in_range = inv.boeckx_invariant <= -1 and (
        (inv.boeckx_invariant == -1) == (alpha == 0)
    )
    ok = analysis.passed and in_range
    return {
        "alpha": rat_str(alpha),
        "beta": rat_str(beta),
        "status": "ok",
        "invariants": inv.to_dict(),
        "boeckx_invariant_range": "pass" if in_range else "fail",
        "pass": ok,
    }


def sweep_report(n: int, alphas, betas) -> dict:
    """Grid sweep; rows with beta^2 <= alpha^2 are rejected, not fatal."""
    points = []
    rejected = []
    for alpha in alphas:
        for beta in betas:
            if beta * beta <= alpha * alpha:
                rejected.append(
                    {
                        "alpha": rat_str(alpha),
                        "beta": rat_str(beta),
                        "status": "rejected",
                        "reason": "beta^2 <= alpha^2",
                    }
                )
            else:
                points.append((alpha, beta))
    if not points:
        raise KmuError("sweep grid is empty: no point satisfies beta^2 > alpha^2")

    points.sort()
    workers = os.cpu_count() or 1
    env = os.environ.get("KMU_THREADS")
    if env:
        try:
            workers = max(1, int(env))
        except ValueError:
            raise KmuError(f"KMU_THREADS must be a positive integer, got {env!r}")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda ab: _sweep_point(n, *ab), points))

    invariants = [Fraction(row["invariants"]["boeckx_invariant"]) for row in rows]
    report = {
        "n": n,
        "grid": rows + rejected,
        "summary": {
            "points": len(rows),
            "rejected": len(rejected),
            "min_boeckx_invariant": rat_str(min(invariants)),
            "max_boeckx_invariant": rat_str(max(invariants)),
        },
        "pass": all(row["pass"] for row in rows),
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }
    return report


def dump_tables_report(desc: ModelDescriptor, which: str) -> dict:
    model = build_boeckx_model(desc.n, desc.alpha, desc.beta)
    analysis = analyze_structure(model)
    entries = {}
    if which == "connection":
        for i in range(model.dim):
            for j in range(model.dim):
                vec = analysis.conn.gamma[i][j]
                for k in range(model.dim):
                    if vec[k] != 0:
                        entries[f"{i},{j},{k}"] = rat_str(vec[k])
    else:
        for i in range(model.dim):
            for j in range(model.dim):
                for k in range(model.dim):
                    vec = analysis.curvature.table[i][j][k]
                    for l in range(model.dim):
                        if vec[l] != 0:
                            entries[f"{i},{j},{k},{l}"] = rat_str(vec[l])
    return {
        "model": {
            "n": desc.n,
            "alpha": rat_str(desc.alpha),
            "beta": rat_str(desc.beta),
        },
        "table": which,
        "entries": dict(sorted(entries.items())),
        "pass": True,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def _emit(report: dict, out_path: str | None) -> int:
    text = json.dumps(report, indent=2)
    print(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    return 0 if report.get("pass") else 1


def _parse_rational_list(text: str):
    return [rat(part) for part in text.split(",") if part.strip()]


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kmu",
        description=(
            "Exact verification of the Lie-group models of non-Sasakian"
            " (kappa,mu)-spaces and their Legendrian submanifolds."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the full identity suite on a model")
    p.add_argument("descriptor", help="path to a JSON model descriptor")
    p.add_argument("--out", help="also write the report to this file")

    p = sub.add_parser("deform", help="apply a homothetic deformation and re-verify")
    p.add_argument("descriptor")
    p.add_argument("--a", required=True, help="deformation constant, 'p/q'")
    p.add_argument("--out")

    p = sub.add_parser("submanifold", help="classify and verify one distribution")
    p.add_argument("descriptor")
    p.add_argument("--kind", required=True, choices=["x", "y", "mixed", "diag"])
    p.add_argument("--k", type=int, help="E(lambda) dimension for kind=mixed")
    p.add_argument(
        "--z-choices",
        help="string of 'x'/'y' characters for Z_3..Z_n (kind=mixed)",
    )
    p.add_argument("--c", help="rational coefficient for kind=diag")
    p.add_argument("--d", help="rational coefficient for kind=diag")
    p.add_argument("--out")

    p = sub.add_parser("sweep", help="verify a rational (alpha, beta) grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", required=True, help="comma-separated rationals")
    p.add_argument("--betas", required=True, help="comma-separated rationals")
    p.add_argument("--out")

    p = sub.add_parser("dump-tables", help="export connection or curvature entries")
    p.add_argument("descriptor")
    p.add_argument(
        "--table", default="connection", choices=["connection", "curvature"]
    )
    p.add_argument("--out")

    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    stage = "parse"
    try:
        if args.command == "verify":
            desc = load_descriptor(args.descriptor)
            stage = "verify"
            return _emit(build_report(desc), args.out)

        if args.command == "deform":
            desc = load_descriptor(args.descriptor)
            stage = "deform"
            return _emit(build_report(desc, deformation_a=rat(args.a)), args.out)

        if args.command == "submanifold":
            desc = load_descriptor(args.descriptor)
            stage = "submanifold"
            kind = "diagonal" if args.kind == "diag" else args.kind
            model = build_boeckx_model(desc.n, desc.alpha, desc.beta)
            analysis = analyze_structure(model)
            block, ok = _submanifold_block(
                analysis,
                {
                    "kind": kind,
                    "k": args.k,
                    "z_choices": tuple(args.z_choices) if args.z_choices else None,
                    "c": rat(args.c) if args.c else None,
                    "d": rat(args.d) if args.d else None,
                },
            )
            report = {
                "model": {
                    "n": desc.n,
                    "alpha": rat_str(desc.alpha),
                    "beta": rat_str(desc.beta),
                },
                "submanifold": block,
                "notes": [LAMBDA_NOTE],
                "pass": ok and all(r.passed for r in analysis.records),
                "generated_at": datetime.now(timezone.utc).isoformat(),
            }
            return _emit(report, args.out)

        if args.command == "sweep":
            stage = "sweep"
            report = sweep_report(
                args.n,
                _parse_rational_list(args.alphas),
                _parse_rational_list(args.betas),
            )
            return _emit(report, args.out)

        if args.command == "dump-tables":
            desc = load_descriptor(args.descriptor)
            stage = "dump-tables"
            return _emit(dump_tables_report(desc, args.table), args.out)

        raise AssertionError(f"unhandled command {args.command}")
    except KmuError as exc:
        print(
            json.dumps({"error": {"stage": stage, "message": str(exc)}}, indent=2),
            file=sys.stderr,
        )
        return 1


if __name__ == "__main__":
    sys.exit(main())
