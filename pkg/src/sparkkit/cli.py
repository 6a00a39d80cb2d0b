"""``sparkkit`` command line: every subcommand prints one JSON report.

Exit status is 0 on success, 2 for unreadable input and 3 when an
operation's precondition fails.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from . import formats, graphs, nsp, recovery, reductions, rip
from .spark import full_spark_violation, has_circuit_at_most, min_circuit_through_column, spark as spark_of
from .errors import FormatError, Infeasible, PreconditionError

SCHEMA = "sparkkit.report/1"

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3


def _digest(*paths):
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _load_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return formats.parse_matrix(fh.read(), source=path)


def _vec(x):
    return None if x is None else [formats.rational_str(v) for v in x]


def _idx(S):
    return None if S is None else [int(i) for i in S]


def _rhs(text):
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            return formats.parse_vector(fh.read(), source=text)
    return formats.parse_vector(text, source="--b")


def _number(text, flag):
    return formats.parse_number(text.strip(), source=flag)


def cmd_spark(args, A):
    sv = spark_of(A)
    return {
        "spark": sv.value,
        "no_circuit": sv.no_circuit,
        "witness": _idx(sv.witness.support) if sv.witness else None,
        "witness_vector": _vec(sv.witness.witness) if sv.witness else None,
    }


def cmd_circuit(args, A):
    if args.through is None:
        found, c = has_circuit_at_most(A, args.k)
        return {
            "k": args.k,
            "found": found,
            "witness": _idx(c.support) if c else None,
            "witness_vector": _vec(c.witness) if c else None,
        }
    sv = min_circuit_through_column(A, args.through)
    return {
        "k": args.k,
        "through": args.through,
        "found": sv.at_most(args.k),
        "size": sv.value,
        "witness": _idx(sv.witness.support) if sv.witness else None,
        "witness_vector": _vec(sv.witness.witness) if sv.witness else None,
    }


def cmd_fullspark(args, A):
    bad = full_spark_violation(A)
    return {"full_spark": bad is None, "violation": _idx(bad)}


def cmd_ric(args, A):
    rep = rip.ric(A, args.k)
    out = {
        "k": args.k,
        "delta_lower": formats.float_str(rep.delta_lower),
        "delta_upper": formats.float_str(rep.delta_upper),
        "delta": formats.float_str(rep.delta),
        "delta_lower_exact": "1" if rep.exact_kernel_flag else None,
        "exact_kernel": rep.exact_kernel_flag,
        "witness_lower": _idx(rep.witness_lower),
        "witness_upper": _idx(rep.witness_upper),
    }
    if args.certify is not None:
        d = _number(args.certify, "--certify")
        out["certify"] = {"delta": formats.number_str(d), "holds": rip.rip_certify(A, args.k, d)}
    return out


def cmd_nsc(args, A):
    rep = nsp.nsc(A, args.k, jobs=args.jobs)
    out = {
        "k": args.k,
        "alpha": formats.rational_str(rep.alpha),
        "alpha_decimal": formats.float_str(rep.alpha),
        "witness_support": _idx(rep.witness_support),
        "witness_vector": _vec(rep.witness_vector),
        "witness_signs": _idx(rep.witness_signs),
    }
    if args.certify is not None:
        a = _number(args.certify, "--certify")
        out["certify"] = {"alpha": formats.number_str(a), "holds": nsp.nsp_certify(A, args.k, a)}
    return out


def cmd_coherence(args, A):
    c = recovery.coherence(A)
    bound = None if c.mu_squared == 0 else formats.float_str(1 + 1 / c.mu)
    return {
        "mu": formats.float_str(c.mu),
        "mu_squared": formats.rational_str(c.mu_squared),
        "pair": _idx(c.pair),
        "spark_lower_bound": bound,
    }


def cmd_p0(args, A):
    try:
        sol = recovery.solve_p0(A, _rhs(args.b))
    except Infeasible:
        return {"feasible": False}
    return {"feasible": True, "l0": sol.l0, "support": _idx(sol.support), "x": _vec(sol.x)}


def cmd_p1(args, A):
    try:
        sol = recovery.solve_p1(A, _rhs(args.b))
    except Infeasible:
        return {"feasible": False}
    return {
        "feasible": True,
        "value": formats.rational_str(sol.value),
        "value_decimal": formats.float_str(sol.value),
        "unique": sol.unique,
        "x": _vec(sol.x),
    }


def cmd_equivalence(args, A):
    v = recovery.check_l0_l1_equivalence(A, args.k)
    out = {"k": args.k, "equivalent": v.equivalent, "counterexample": None}
    if v.counterexample:
        c = v.counterexample
        out["counterexample"] = {
            "support": _idx(c.support),
            "signs": _idx(c.signs),
            "x_sparse": _vec(c.x_sparse),
            "b": _vec(c.b),
            "alternative": _vec(c.alternative),
        }
    return out


def cmd_pca(args, A):
    value, w = rip.sparse_pca_max(A, args.k)
    out = {"k": args.k, "value": formats.float_str(value), "witness": _idx(w)}
    if args.lam is not None:
        lam = _number(args.lam, "--lambda")
        out["decide"] = {"lambda": formats.number_str(lam), "below": rip.sparse_pca_decide(A, args.k, lam)}
    return out


def cmd_reduce(args):
    with open(args.graph, encoding="utf-8") as fh:
        g = graphs.parse_graph(fh.read(), source=args.graph)
    build = {"spark": reductions.clique_to_spark, "ric": reductions.clique_to_ric, "pca": reductions.clique_to_pca}
    inst = build[args.kind](g, args.k)
    out = reductions.describe(inst)
    if args.out:
        meta = reductions.save_instance(inst, args.out)
        out["intended_answer"] = meta["intended_answer"]
        out["certificate"] = meta["certificate"]
        out["out"] = args.out
    return out


def cmd_verify(args):
    inst = reductions.load_instance(args.instance)
    rep = reductions.verify_reduction(inst)
    value = rep.target_value
    if isinstance(value, float):
        value = formats.float_str(value)
    threshold = rep.threshold
    if isinstance(threshold, float):
        threshold = formats.float_str(threshold)
    return {
        "kind": rep.kind,
        "agree": rep.agree,
        "ok": rep.ok,
        "answer": rep.answer,
        "target_answer": "clique" if rep.target_answer else "no clique",
        "target_value": value,
        "threshold": threshold,
        "margin": None if rep.margin is None else formats.float_str(rep.margin),
        "clique_witness": _idx(rep.clique_witness),
        "target_witness": _idx(rep.target_witness),
        "checks": rep.checks,
    }


MATRIX_COMMANDS = {
    "spark": cmd_spark,
    "circuit": cmd_circuit,
    "fullspark": cmd_fullspark,
    "ric": cmd_ric,
    "nsc": cmd_nsc,
    "coherence": cmd_coherence,
    "p0": cmd_p0,
    "p1": cmd_p1,
    "equivalence": cmd_equivalence,
    "pca": cmd_pca,
}


def build_parser():
    ap = argparse.ArgumentParser(prog="sparkkit", description="Exact sparse-recovery constants and clique reductions.")
    ap.add_argument("--jobs", type=int, default=None, help="worker processes (default: $SPARKKIT_JOBS or 1)")
    sub = ap.add_subparsers(dest="command", required=True)

    def matrix_cmd(name, help, k=False, k_required=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("matrix")
        if k:
            p.add_argument("--k", type=int, required=k_required)
        return p

    matrix_cmd("spark", "smallest circuit")
    p = matrix_cmd("circuit", "circuit with at most K columns", k=True)
    p.add_argument("--through", type=int, default=None, help="0-based column the circuit must contain")
    matrix_cmd("fullspark", "is every m-column submatrix nonsingular")
    p = matrix_cmd("ric", "restricted isometry constants", k=True)
    p.add_argument("--certify", default=None, metavar="DELTA")
    p = matrix_cmd("nsc", "nullspace constant", k=True)
    p.add_argument("--certify", default=None, metavar="ALPHA")
    matrix_cmd("coherence", "mutual coherence")
    for name in ("p0", "p1"):
        p = matrix_cmd(name, "sparsest solution" if name == "p0" else "least l1-norm solution")
        p.add_argument("--b", required=True, help="right-hand side, e.g. '1,0,2' or a file")
    matrix_cmd("equivalence", "l0-l1 equivalence for k-sparse vectors", k=True)
    p = matrix_cmd("pca", "sparse PCA value", k=True)
    p.add_argument("--lambda", dest="lam", default=None, metavar="L")

    p = sub.add_parser("reduce", help="clique instance to spark/ric/pca instance")
    p.add_argument("kind", choices=["spark", "ric", "pca"])
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None, metavar="DIR")

    p = sub.add_parser("verify", help="brute-force check of a reduction instance directory")
    p.add_argument("instance")
    return ap


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.jobs = nsp.resolve_jobs(args.jobs)
    start = time.perf_counter()
    try:
        if args.command == "reduce":
            digest = _digest(args.graph)
            result = cmd_reduce(args)
        elif args.command == "verify":
            digest = _digest(
                os.path.join(args.instance, reductions.SIDECAR_FILE),
                os.path.join(args.instance, reductions.MATRIX_FILE),
            )
            result = cmd_verify(args)
        else:
            digest = _digest(args.matrix)
            A = _load_matrix(args.matrix)
            result = MATRIX_COMMANDS[args.command](args, A)
    except FormatError as exc:
        print(f"sparkkit: malformed input: {exc}", file=stderr)
        return EXIT_FORMAT
    except OSError as exc:
        print(f"sparkkit: cannot read input: {exc}", file=stderr)
        return EXIT_FORMAT
    except PreconditionError as exc:
        print(f"sparkkit: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        # shape mismatches between the matrix and --b and the like
        print(f"sparkkit: malformed input: {exc}", file=stderr)
        return EXIT_FORMAT
    report = {
        "schema": SCHEMA,
        "command": argv,
        "input_sha256": digest,
        "result": result,
        "wall_time": round(time.perf_counter() - start, 6),
    }
    json.dump(report, stdout, indent=2, sort_keys=True)
    stdout.write("\n")
    return EXIT_OK


def main():
    try:
        code = run()
    except SystemExit as exc:
        code = exc.code
    sys.exit(code)


if __name__ == "__main__":
    main()
