"""Command-line harness.

Human-readable summaries go to stdout; machine reports go only to the file
given by --out (or the campaign spec's output_path), so scripts can rely on
both streams. Exit status is 0 exactly when every executed check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import __version__
from .campaign import CampaignSpec, Instance, run_campaign, run_instance, write_report
from .checks import (
    find_counterexamples_remarks,
    reproduce_counterexample_2_8,
    reproduce_sharpness_cor2_5,
)
from .decompose import polar
from .errors import OpcheckError
from .io import dump_json, matrix_from_json, matrix_to_json, tolerance_from_json
from .linalg import Tolerance
from .means import geometric_mean_ex

_DEFAULT_SEED_ENV = "OPCHECK_SEED"


def _default_seed() -> int:
    try:
        return int(os.environ.get(_DEFAULT_SEED_ENV, "2026"))
    except ValueError:
        return 2026


def _load_tolerance(args) -> Optional[Tolerance]:
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = json.load(fh)
    if getattr(args, "tol", None) is not None:
        cfg["abs"] = args.tol
        cfg.setdefault("rel", args.tol)
    if not cfg:
        return None
    return tolerance_from_json(cfg, dim=8)


def _cmd_check(args) -> int:
    with open(args.infile) as fh:
        payload = json.load(fh)
    payload["check_id"] = args.check_id
    inst = Instance.from_json(payload)
    tol = _load_tolerance(args) or Tolerance.for_dim(inst.phi.out_dim, abs=1e-8, rel=1e-8)
    result = run_instance(inst, tol)
    from .campaign import _outcome_json, _result_passed_and_slack

    passed, slack = _result_passed_and_slack(result)
    if args.out:
        dump_json(_outcome_json(result), args.out)
    print(f"{args.check_id}: {'PASS' if passed else 'FAIL'} (slack {slack:+.3e})")
    return 0 if passed else 1


def _cmd_campaign(args) -> int:
    with open(args.spec) as fh:
        spec = CampaignSpec.from_json(json.load(fh))
    report = run_campaign(spec)
    out = args.out or spec.output_path
    if out:
        write_report(report, out)
    status = "PASS" if report.failures == 0 else "FAIL"
    print(
        f"campaign {spec.check_id}: {status} "
        f"({report.trials_run} trials, {report.failures} failures, "
        f"{report.near_misses} near misses, min slack {report.min_slack:+.3e})"
    )
    if report.aborted_instance is not None:
        print("first failing instance kept in report for replay")
    return 0 if report.failures == 0 else 1


def _cmd_repro(args) -> int:
    if args.name == "example-2.8":
        rep = reproduce_counterexample_2_8(pairs=100, seed=_default_seed())
        print("transpose-augmented map on the 2x2 weighted shift:")
        print(f"  det |phi(Z)|      = {rep.det_lhs:.12f}   (expected 25)")
        print(
            f"  det geometric rhs = [{rep.det_rhs_min:.12f}, {rep.det_rhs_max:.12f}]"
            f"   (expected 16 for all {rep.pairs} unitary pairs)"
        )
        print(f"  gap confirms the split bound needs 2-positivity: {'PASS' if rep.passed else 'FAIL'}")
        payload = {
            "name": "example-2.8",
            "pass": rep.passed,
            "det_lhs": rep.det_lhs,
            "det_rhs_min": rep.det_rhs_min,
            "det_rhs_max": rep.det_rhs_max,
            "pairs": rep.pairs,
        }
        ok = rep.passed
    elif args.name == "sharpness":
        rep = reproduce_sharpness_cor2_5(args.k)
        import math

        print(f"scaled bound sharpness at k = {args.k:g}:")
        print(f"  spectral radius rho = {rep.rho:.12g}   (expected {args.k:g})")
        print(f"  <e2, |Z^T| e2>      = {rep.bracket_lhs:.12g}   (expected {args.k:g})")
        print(
            f"  required constant   = {rep.required_constant:.12g}"
            f"   (lower bound sqrt(k) = {math.sqrt(args.k):.12g})"
        )
        print(f"  sqrt(rho)-scaled inequality slack = {rep.scaled_certificate.slack:+.3e}")
        print(f"  {'PASS' if rep.passed else 'FAIL'}")
        payload = {
            "name": "sharpness",
            "pass": rep.passed,
            "k": rep.k,
            "rho": rep.rho,
            "bracket_lhs": rep.bracket_lhs,
            "required_constant": rep.required_constant,
            "certificate": rep.scaled_certificate.to_json_dict(),
        }
        ok = rep.passed
    else:  # cartesian-cex
        rep = find_counterexamples_remarks(trials=args.trials, seed=_default_seed(), dim=2)
        print("operator-norm failures around K = |X| + |Y| (all expected to exist):")
        print(
            f"  |Z| <= K fails           at trial {rep.loewner_witness.trial_index}"
            f" (margin {rep.loewner_witness.margin:.4f})"
        )
        print(
            f"  || |Z|^1/2 K^-1/2 || > 1 at trial {rep.half_power_witness.trial_index}"
            f" (excess {rep.half_power_witness.margin:.4f})"
        )
        print(
            f"  || Z K^-1 || > 1         at trial {rep.plain_norm_witness.trial_index}"
            f" (excess {rep.plain_norm_witness.margin:.4f})"
        )
        print(
            f"  while rho(Z K^-1) <= 1 and ||K^-1/2 Z K^-1/2|| <= 1 on every sample: "
            f"{'PASS' if rep.consistency_ok else 'FAIL'} "
            f"(worst rho {rep.worst_rho:.9f}, worst norm {rep.worst_congruence_norm:.9f})"
        )
        payload = {
            "name": "cartesian-cex",
            "pass": rep.consistency_ok and rep.all_found,
            "trials": rep.trials,
            "witness_trials": {
                "loewner": rep.loewner_witness.trial_index,
                "half_power": rep.half_power_witness.trial_index,
                "plain_norm": rep.plain_norm_witness.trial_index,
            },
            "worst_rho": rep.worst_rho,
            "worst_congruence_norm": rep.worst_congruence_norm,
        }
        ok = rep.consistency_ok
    if args.out:
        dump_json(payload, args.out)
    return 0 if ok else 1


def _cmd_find_cex(args) -> int:
    rep = find_counterexamples_remarks(trials=args.trials, seed=args.seed, dim=args.n)
    print(
        f"found all three witnesses by trial "
        f"{max(rep.loewner_witness.trial_index, rep.half_power_witness.trial_index, rep.plain_norm_witness.trial_index)}; "
        f"consistency {'PASS' if rep.consistency_ok else 'FAIL'}"
    )
    if args.out:
        payload = {
            "trials": rep.trials,
            "seed": rep.seed,
            "dim": rep.dim,
            "pass": rep.consistency_ok,
            "witnesses": {
                "loewner": {
                    "trial": rep.loewner_witness.trial_index,
                    "margin": rep.loewner_witness.margin,
                    "Z": matrix_to_json(rep.loewner_witness.matrix),
                },
                "half_power": {
                    "trial": rep.half_power_witness.trial_index,
                    "margin": rep.half_power_witness.margin,
                    "Z": matrix_to_json(rep.half_power_witness.matrix),
                },
                "plain_norm": {
                    "trial": rep.plain_norm_witness.trial_index,
                    "margin": rep.plain_norm_witness.margin,
                    "Z": matrix_to_json(rep.plain_norm_witness.matrix),
                },
            },
            "worst_rho": rep.worst_rho,
            "worst_congruence_norm": rep.worst_congruence_norm,
        }
        dump_json(payload, args.out)
    return 0 if rep.consistency_ok else 1


def _cmd_mean(args) -> int:
    with open(args.a) as fh:
        a = matrix_from_json(json.load(fh))
    with open(args.b) as fh:
        b = matrix_from_json(json.load(fh))
    mean, used_limit = geometric_mean_ex(a, b, _load_tolerance(args))
    if args.out:
        dump_json({"mean": matrix_to_json(mean), "used_singular_mean_limit": used_limit}, args.out)
    print(f"geometric mean computed ({'singular limit' if used_limit else 'definite formula'})")
    return 0


def _cmd_polar(args) -> int:
    with open(args.infile) as fh:
        z = matrix_from_json(json.load(fh))
    parts = polar(z, _load_tolerance(args))
    if args.out:
        dump_json(
            {"unitary": matrix_to_json(parts.unitary), "modulus": matrix_to_json(parts.modulus)},
            args.out,
        )
    print("polar decomposition computed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opcheck",
        description="Certificate-producing checks for positive-map operator inequalities",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run one check on a serialized instance")
    p.add_argument("check_id")
    p.add_argument("--in", dest="infile", required=True, help="instance JSON file")
    p.add_argument("--tol", type=float, default=None, help="absolute tolerance override")
    p.add_argument("--config", default=None, help="tolerance config JSON")
    p.add_argument("--out", default=None, help="certificate JSON output path")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("campaign", help="run a seeded campaign from a spec file")
    p.add_argument("--spec", required=True, help="campaign spec JSON")
    p.add_argument("--out", default=None, help="report path (overrides spec output_path)")
    p.set_defaults(func=_cmd_campaign)

    p = sub.add_parser("repro", help="reproduce a named example")
    p.add_argument("name", choices=["example-2.8", "sharpness", "cartesian-cex"])
    p.add_argument("--k", type=float, default=4.0, help="weight for the sharpness example")
    p.add_argument("--trials", type=int, default=10_000, help="search budget for cartesian-cex")
    p.add_argument("--out", default=None, help="report JSON output path")
    p.set_defaults(func=_cmd_repro)

    p = sub.add_parser("find-cex", help="search for Cartesian-sum counterexamples")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--n", type=int, default=2, help="matrix dimension (2 or 3)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_find_cex)

    p = sub.add_parser("mean", help="geometric mean of two PSD matrices")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_mean)

    p = sub.add_parser("polar", help="polar decomposition of a square matrix")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--config", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_polar)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OpcheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
