"""Command-line front end: ingest JSON records, run verification
pipelines, emit machine-readable reports.

Exit codes: 0 = all checks pass, 1 = mathematical failure, 2 = malformed
input.  WHA_TOL overrides the default tolerance; --tol overrides both.
"""

import argparse
import json
import sys

import numpy as np

from . import examples as ex
from . import serialize as ser
from .config import DEFAULT_DIM_BUDGET, tolerance
from .errors import FormatError, WeakHopfError
from .hopf import AXIOM_NAMES, is_pure, verify_weak_hopf
from .integrals import LeftIntegral, classify, haar, left_integral_space, \
    right_integral_space


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def _emit(report, args):
    if args.format == "text":
        lines = _text_lines(report)
        out = "\n".join(lines) + "\n"
    else:
        out = ser.dump_canonical(report) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _text_lines(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                lines.append(f"{prefix}{k}:")
                lines.extend(_text_lines(v, prefix + "  "))
            else:
                lines.append(f"{prefix}{k} = {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.extend(_text_lines(v, prefix + "  "))
            else:
                lines.append(f"{prefix}- {v}")
    else:
        lines.append(f"{prefix}{obj}")
    return lines


def _coords_json(vec):
    return ser.array_to_pairs(np.asarray(vec))


def cmd_verify(args):
    rec = _load_json(args.input)
    tol = tolerance(args.tol)
    if "coproduct" in rec:
        W = ser.weak_hopf_from_record(rec, tol=tol, check=False)
        rep = verify_weak_hopf(W, tol=tol)
        report = {
            "kind": "weak_hopf",
            "tolerance": tol,
            "input_hash": ser.content_hash(rec),
            "residuals": {k: float(v) for k, v in rep.residuals.items()},
            "antipode_invertible": rep.antipode_invertible,
            "relaxed_system_passed": rep.relaxed_passed(tol=tol),
            "passed": rep.passed(tol=tol),
            "failures": rep.failures(tol=tol),
        }
        _emit(report, args)
        return 0 if report["passed"] else 1
    # bare star algebra
    try:
        ser.star_algebra_from_record(rec, tol=tol, check=True)
    except FormatError:
        raise
    except WeakHopfError as exc:
        _emit({"kind": "star_algebra", "tolerance": tol,
               "input_hash": ser.content_hash(rec),
               "passed": False, "error": str(exc)}, args)
        return 1
    _emit({"kind": "star_algebra", "tolerance": tol,
           "input_hash": ser.content_hash(rec), "passed": True}, args)
    return 0


def cmd_example(args):
    tol = tolerance(args.tol)
    if args.what == "group":
        G = ex.named_group(args.group)
        H = [int(x) for x in args.subgroup.split(",")] if args.subgroup else None
        W = ex.group_weak_hopf(G, H, tol=tol)
        _emit(ser.weak_hopf_record(W), args)
    elif args.what == "twisted":
        if args.name != "pauli":
            raise FormatError("the twisted family ships with --name pauli")
        W, _ = ex.m2_pauli_action(tol=tol)
        _emit(ser.weak_hopf_record(W), args)
    elif args.what == "action":
        MA = ex.named_action(args.name, tol=tol)
        _emit(ser.module_algebra_record(MA), args)
    else:
        raise FormatError(f"unknown example kind {args.what!r}")
    return 0


def cmd_integrals(args):
    rec = _load_json(args.input)
    tol = tolerance(args.tol)
    W = ser.weak_hopf_from_record(rec, tol=tol)
    hd = haar(W, tol=tol)
    report = {
        "tolerance": tol,
        "input_hash": ser.content_hash(rec),
        "left_space_dim": left_integral_space(W, tol=tol).dim,
        "right_space_dim": right_integral_space(W, tol=tol).dim,
        "haar": _coords_json(hd.h.coords),
        "dual_haar": _coords_json(hd.hhat.coords),
        "g_l": _coords_json(hd.g_l.coords),
        "g_r": _coords_json(hd.g_r.coords),
        "g": _coords_json(hd.g.coords),
        "modular_residuals": {k: float(v)
                              for k, v in hd.modular_report(tol=tol).items()},
    }
    if args.integral:
        coords = ser.pairs_to_array(_load_json(args.integral), (W.dim,))
        l = LeftIntegral(W, coords, tol=tol)
        report["classification"] = classify(l, tol=tol)
    _emit(report, args)
    return 0 if max(report["modular_residuals"].values()) <= tol else 1


def cmd_crossed(args):
    from .crossed import commutant_suite, crossed_product, tlj_elements
    from .integrals import random_positive_integral

    rec = _load_json(args.input)
    tol = tolerance(args.tol)
    MA = ser.module_algebra_from_record(rec, tol=tol)
    X = crossed_product(MA, tol=tol)
    report = {
        "tolerance": tol,
        "input_hash": ser.content_hash(rec),
        "pre_dim": MA.target.dim * MA.hopf.dim,
        "dim": X.dim,
        "relation_rank": X.relation_rank,
        "m_embedding_kernel_dim": int(MA.target.dim
                                      - np.linalg.matrix_rank(X.embed_m)),
        "a_embedding_kernel_dim": MA.image_data(tol=tol).ideal.dim,
    }
    suite = commutant_suite(X, tol=tol)
    report["commutants"] = {k: (int(v) if isinstance(v, (int, np.integer))
                                else bool(v)) for k, v in suite.items()}
    rng = np.random.default_rng(0)
    l = random_positive_integral(MA.hopf, rng, tol=tol)
    _, _, tlj = tlj_elements(X, l, tol=tol)
    report["tlj_residuals"] = {k: float(v) for k, v in tlj.items()}
    _emit(report, args)
    ok = max(report["tlj_residuals"].values()) <= 1e4 * tol
    return 0 if ok else 1


def cmd_tower(args):
    from .tower import build_tower, commutant_table, depth2_check

    rec = _load_json(args.seed)
    tol = tolerance(args.tol)
    MA = ser.module_algebra_from_record(rec, tol=tol)
    T = build_tower(MA, args.depth, tol=tol, budget=args.budget)
    table = commutant_table(T, tol=tol)
    report = {
        "tolerance": tol,
        "input_hash": ser.content_hash(rec),
        "depth": args.depth,
        "dims": table["dims"],
        "n_commutant_dims": table["n_commutant_dims"],
        "center_dims": table["center_dims"],
        "joint_center_dims": table["joint_center_dims"],
        "regular": bool(table["regular"]),
        "depth2": bool(depth2_check(T, tol=tol)),
    }
    if "regular_table" in table:
        report["regular_table"] = {k: bool(v)
                                   for k, v in table["regular_table"].items()}
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(ser.dump_canonical(report) + "\n")
    _emit(report, args)
    return 0 if report["depth2"] else 1


def cmd_report(args):
    rec = _load_json(args.input)
    tol = tolerance(args.tol)
    W = ser.weak_hopf_from_record(rec, tol=tol, check=False)
    rep = verify_weak_hopf(W, tol=tol)
    report = {
        "tolerance": tol,
        "input_hash": ser.content_hash(rec),
        "axioms": {k: float(rep.residuals[k]) for k in AXIOM_NAMES},
        "derived": {k: float(v) for k, v in rep.residuals.items()
                    if k not in AXIOM_NAMES},
        "passed": rep.passed(tol=tol),
    }
    if report["passed"]:
        hd = haar(W, tol=tol)
        report["boundary_dims"] = {
            "A_L": W.boundary("L", tol=tol).dim,
            "A_R": W.boundary("R", tol=tol).dim,
        }
        report["pure"] = is_pure(W, tol=tol)
        report["modular_residuals"] = {
            k: float(v) for k, v in hd.modular_report(tol=tol).items()}
        dual_rep = verify_weak_hopf(W.dual(), tol=tol)
        report["dual_passed"] = dual_rep.passed(tol=tol)
        report["passed"] = (report["passed"] and report["dual_passed"]
                            and max(report["modular_residuals"].values()) <= tol)
    _emit(report, args)
    return 0 if report["passed"] else 1


def build_parser():
    p = argparse.ArgumentParser(prog="wha",
                                description="weak Hopf algebra computations")
    p.add_argument("--tol", type=float, default=None,
                   help="numerical tolerance (default 1e-9 or WHA_TOL)")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here")
    p.add_argument("--budget", type=int, default=DEFAULT_DIM_BUDGET,
                   help="refuse towers beyond this many dimensions")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("verify", help="verify a (weak Hopf) algebra record")
    q.add_argument("input")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("example", help="emit a built-in instance")
    q.add_argument("what", choices=("group", "twisted", "action"))
    q.add_argument("--group", default="z2", help="z2|z3|z4|z2xz2|s3")
    q.add_argument("--subgroup", default=None,
                   help="comma-separated element indices of the normal subgroup")
    q.add_argument("--name", default="pauli",
                   help="twisted: pauli; action: m2-z2|m2-pauli|m2-collapsed|"
                        "dual-<group>[/<subgroup>]")
    q.set_defaults(func=cmd_example)

    q = sub.add_parser("integrals", help="integral spaces, Haar and modular data")
    q.add_argument("input")
    q.add_argument("--integral", default=None,
                   help="JSON coordinate file of a left integral to classify")
    q.set_defaults(func=cmd_integrals)

    q = sub.add_parser("crossed", help="crossed product of a module record")
    q.add_argument("input")
    q.set_defaults(func=cmd_crossed)

    q = sub.add_parser("tower", help="iterated crossed products")
    q.add_argument("--seed", required=True)
    q.add_argument("--depth", type=int, default=2)
    q.add_argument("--report", default=None)
    q.set_defaults(func=cmd_tower)

    q = sub.add_parser("report", help="full identity suite for an algebra")
    q.add_argument("input")
    q.set_defaults(func=cmd_report)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except WeakHopfError as exc:
        print(f"mathematical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
