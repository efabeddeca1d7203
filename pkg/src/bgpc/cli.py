"""Command-line surface.

Exit codes: 0 success, 1 input error, 2 not-certified / ambiguous verdict,
3 feasibility or enumeration-budget refusal. The environment variable
BGPC_TOL overrides the default rank tolerance for all subcommands.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import certify, construct, experiment, model, serialize
from .recover import UNIQUE as RECOVERY_UNIQUE
from .recover import recover as run_recovery
from .recover import recover_joint_sparse as run_recovery_sparse
from .errors import (BudgetExceededError, InconsistentSystemError,
                     InfeasibleConstructionError)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CERTIFIED = 2
EXIT_REFUSED = 3


def _tol_from_env(args_tol):
    if args_tol is not None:
        return args_tol
    env = os.environ.get("BGPC_TOL")
    return float(env) if env else None


def _cmd_gen(args) -> int:
    inst = model.random_instance(args.n, args.m, args.N, args.seed,
                                 sparsity=args.s)
    serialize.dump_json(serialize.instance_to_dict(inst), args.out)
    if args.y_out:
        serialize.dump_json(serialize.matrix_to_dict(model.forward(inst)),
                            args.y_out)
    if args.a_out:
        serialize.dump_json(serialize.matrix_to_dict(inst.A), args.a_out)
    return EXIT_OK


def _cmd_certify(args) -> int:
    inst = serialize.instance_from_dict(serialize.load_json(args.instance))
    rep = certify.certify_subspace(inst.A, inst.X0, inst.lambda0,
                                   tol=_tol_from_env(args.tol))
    if args.out:
        serialize.dump_json(serialize.report_to_dict(rep), args.out)
    print(f"{rep.mode}: {rep.verdict} "
          f"(rank {rep.stacked_rank}/{rep.required_rank})")
    return EXIT_OK if rep.verdict == certify.IDENTIFIABLE else EXIT_NOT_CERTIFIED


def _cmd_certify_sparse(args) -> int:
    inst = serialize.instance_from_dict(serialize.load_json(args.instance))
    s = args.s if args.s is not None else inst.s
    if s is None:
        raise ValueError("instance has no support field; pass --s")
    rep = certify.certify_joint_sparse(inst.A, inst.X0, inst.lambda0, s,
                                       tol=_tol_from_env(args.tol),
                                       max_cells=args.max_cells)
    if args.out:
        serialize.dump_json(serialize.report_to_dict(rep), args.out)
    print(f"{rep.mode}: {rep.verdict} "
          f"({rep.support_cells_checked} support cells checked)")
    return EXIT_OK if rep.verdict == certify.IDENTIFIABLE else EXIT_NOT_CERTIFIED


def _cmd_construct(args) -> int:
    ci = construct.construct_claim1(args.n, args.m, args.N)
    serialize.dump_json(serialize.constructed_to_dict(ci), args.out)
    cols = ",".join(str(j + 1) for j in ci.selected_cols)
    print(f"selected DFT columns: {cols}; "
          f"expected left null dim {ci.expected_left_null_dim}")
    return EXIT_OK


def _cmd_verify_construct(args) -> int:
    ci = serialize.constructed_from_dict(serialize.load_json(args.input))
    rec = construct.verify_claim1_rank(ci, tol=_tol_from_env(args.tol))
    if args.out:
        serialize.dump_json(serialize.verification_to_dict(rec), args.out)
    print(f"stacked rank {rec.stacked_rank}, D rank {rec.D_rank}, "
          f"left null dim {rec.left_null_dim} "
          f"(expected {rec.expected_left_null_dim}): "
          f"{'pass' if rec.passed else 'FAIL'}")
    return EXIT_OK if rec.passed else EXIT_NOT_CERTIFIED


def _report_alignment(res, truth_path) -> None:
    inst = serialize.instance_from_dict(serialize.load_json(truth_path))
    ax = model.align_scale(res.X, inst.X0)
    al = model.align_scale(res.lam[:, None], inst.lambda0[:, None])
    print(f"relative error: X {ax.relative_error:.3e}, "
          f"lambda {al.relative_error:.3e}")


def _cmd_recover(args) -> int:
    Y = serialize.matrix_from_dict(serialize.load_json(args.Y), "Y")
    A = serialize.matrix_from_dict(serialize.load_json(args.A), "A")
    res = run_recovery(Y, A, tol=_tol_from_env(args.tol))
    if args.out:
        serialize.dump_json(serialize.recovery_to_dict(res), args.out)
    print(f"recovery: {res.status} (null dim {res.null_dim})")
    if res.status == RECOVERY_UNIQUE and args.truth:
        _report_alignment(res, args.truth)
    return EXIT_OK if res.status == RECOVERY_UNIQUE else EXIT_NOT_CERTIFIED


def _cmd_recover_sparse(args) -> int:
    Y = serialize.matrix_from_dict(serialize.load_json(args.Y), "Y")
    A = serialize.matrix_from_dict(serialize.load_json(args.A), "A")
    res = run_recovery_sparse(Y, A, args.s, tol=_tol_from_env(args.tol),
                              max_cells=args.max_cells)
    if args.out:
        serialize.dump_json(serialize.recovery_to_dict(res), args.out)
    sup = ("" if res.support is None
           else " support " + ",".join(str(j + 1) for j in res.support))
    print(f"recovery: {res.status}{sup}")
    if res.status == RECOVERY_UNIQUE and args.truth:
        _report_alignment(res, args.truth)
    return EXIT_OK if res.status == RECOVERY_UNIQUE else EXIT_NOT_CERTIFIED


def _cmd_sweep(args) -> int:
    cfg = experiment.config_from_dict(serialize.load_json(args.config))
    if _tol_from_env(None) is not None and cfg.tolerance is None:
        cfg.tolerance = _tol_from_env(None)
    workers = args.threads if args.threads else os.cpu_count()
    cells = experiment.run_sweep(cfg, max_workers=workers)
    experiment.write_csv(cells, args.csv)
    if args.json:
        experiment.write_json(cells, args.json)
    ran = sum(1 for c in cells if not c.skipped_reason)
    print(f"{len(cells)} cells ({ran} run, {len(cells) - ran} skipped) "
          f"-> {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bgpc",
        description="Blind gain and phase calibration: identifiability "
                    "certificates, explicit constructions, null-space "
                    "recovery, and phase-transition sweeps.")
    p.add_argument("--threads", type=int, default=None,
                   help="worker cap for parallel sections (default: all cores)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a seeded random instance")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--s", type=int, default=None,
                   help="row sparsity (enables joint-sparse mode)")
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--y-out", default=None,
                   help="also write the forward measurements as a matrix file")
    g.add_argument("--a-out", default=None,
                   help="also write the dictionary as a matrix file")
    g.set_defaults(func=_cmd_gen)

    c = sub.add_parser("certify", help="run the subspace-model certificate")
    c.add_argument("--instance", required=True)
    c.add_argument("--tol", type=float, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(func=_cmd_certify)

    cs = sub.add_parser("certify-sparse",
                        help="run the joint-sparsity certificate")
    cs.add_argument("--instance", required=True)
    cs.add_argument("--s", type=int, default=None)
    cs.add_argument("--tol", type=float, default=None)
    cs.add_argument("--max-cells", type=int, default=certify.DEFAULT_CELL_BUDGET)
    cs.add_argument("--out", default=None)
    cs.set_defaults(func=_cmd_certify_sparse)

    co = sub.add_parser("construct",
                        help="build the explicit DFT-column instance")
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--m", type=int, required=True)
    co.add_argument("--N", type=int, required=True)
    co.add_argument("--out", required=True)
    co.set_defaults(func=_cmd_construct)

    v = sub.add_parser("verify-construct",
                       help="verify the exact ranks of a constructed instance")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--tol", type=float, default=None)
    v.add_argument("--out", default=None)
    v.set_defaults(func=_cmd_verify_construct)

    r = sub.add_parser("recover", help="null-space recovery from (Y, A)")
    r.add_argument("--Y", required=True)
    r.add_argument("--A", required=True)
    r.add_argument("--tol", type=float, default=None)
    r.add_argument("--truth", default=None,
                   help="instance file to report alignment errors against")
    r.add_argument("--out", default=None)
    r.set_defaults(func=_cmd_recover)

    rs = sub.add_parser("recover-sparse",
                        help="joint-sparse recovery with support search")
    rs.add_argument("--Y", required=True)
    rs.add_argument("--A", required=True)
    rs.add_argument("--s", type=int, required=True)
    rs.add_argument("--tol", type=float, default=None)
    rs.add_argument("--max-cells", type=int, default=10 ** 6)
    rs.add_argument("--truth", default=None)
    rs.add_argument("--out", default=None)
    rs.set_defaults(func=_cmd_recover_sparse)

    sw = sub.add_parser("sweep", help="run a phase-transition sweep")
    sw.add_argument("--config", required=True)
    sw.add_argument("--csv", required=True)
    sw.add_argument("--json", default=None)
    sw.set_defaults(func=_cmd_sweep)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (BudgetExceededError, InfeasibleConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ValueError, InconsistentSystemError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
