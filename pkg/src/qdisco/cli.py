"""Command-line front end: ``qdisco {solve,bench,gen,oracle,reduce}``.

Exit codes: 0 success, 2 usage error, 3 infeasible threshold, 4 empty after
agreement filtering, 5 I/O error, 6 instance too large for the exact
oracle, 7 no feasible subset, 8 malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import io
from .baselines import agreement_filter
from .exceptions import (InfeasibleThresholdError, InputError,
                         InstanceTooLargeError, QDiscoError)
from .graph import OpinionData, QDiscoInstance
from .lagrange import q_lagrange
from .oracle import brute_qdisco, damks_gadget
from .peeling import q_peeling
from .synth import gen_bimodal_agreements, gen_gnm, gen_uniform_opinions

EXIT_OK = 0
EXIT_INFEASIBLE = 3
EXIT_EMPTY_FILTER = 4
EXIT_IO = 5
EXIT_TOO_LARGE = 6
EXIT_NO_FEASIBLE = 7
EXIT_INPUT = 8

DEFAULT_SEED = 0
BENCH_COLUMNS = ["theta", "density", "agreement", "size", "upper_bound", "seconds"]

log = logging.getLogger("qdisco")


class EmptyResult(QDiscoError):
    def __init__(self, msg, code):
        super().__init__(msg)
        self.code = code


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _sweep(text: str) -> list[float]:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected lo:hi:step")
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError("need step > 0 and hi >= lo")
    count = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def _add_input_args(p):
    p.add_argument("graph", help="edge list file")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--opinions", help="opinion matrix file (use with --query)")
    src.add_argument("--agreements", help="precomputed agreement file")
    p.add_argument("--query", type=_floats, help="query vector, e.g. 1,-1")


def _load(args):
    graph = io.load_edge_list(args.graph)
    if args.opinions:
        if args.query is None:
            raise InputError("--opinions needs --query")
        data = io.load_opinions(args.opinions, graph, mode="matrix")
        c = data.agreements_for(args.query)
    else:
        if args.query is not None:
            raise InputError("--query cannot be combined with --agreements")
        c = io.load_opinions(args.agreements, graph, mode="agreement").agreements
    return graph, c


def run_solver(inst: QDiscoInstance, algo: str, epsilon: float, max_n: int = 20):
    """Run one solver; return its solution with bounds in ``meta``."""
    if algo == "lagrange":
        return q_lagrange(inst, epsilon).solution
    if algo == "peel":
        return q_peeling(inst, epsilon).solution
    if algo == "af":
        sol = agreement_filter(inst)
        if sol is None:
            raise EmptyResult("empty-after-filter: no node has agreement >= theta",
                              EXIT_EMPTY_FILTER)
        return sol
    if algo == "exact":
        sol = brute_qdisco(inst, max_n=max_n)
        if sol is None:
            raise EmptyResult("no-feasible-set", EXIT_NO_FEASIBLE)
        return sol.with_bound(sol.density, solver="exact")
    raise ValueError(algo)


def _summary(rec) -> str:
    ub = rec["upper_bound"]
    return (f"{rec['solver']}: |S|={rec['size']} d(S)={rec['density']:.6g} "
            f"c(S)={rec['agreement']:.6g} UB={'-' if ub is None else format(ub, '.6g')} "
            f"seconds={rec['seconds']:.3f}")


def _emit(args, rec):
    if args.out:
        io.write_result(args.out, rec)
    print(json.dumps(rec) if args.json else _summary(rec))


def cmd_solve(args) -> int:
    graph, c = _load(args)
    inst = QDiscoInstance(graph, c, args.theta)
    t0 = time.perf_counter()
    sol = run_solver(inst, args.algo, args.epsilon, args.max_n)
    secs = time.perf_counter() - t0
    rec = io.make_record(sol, graph, solver=args.algo, theta=args.theta,
                         epsilon=args.epsilon, query=args.query, seconds=secs)
    _emit(args, rec)
    return EXIT_OK


def cmd_oracle(args) -> int:
    args.algo = "exact"
    return cmd_solve(args)


def bench_rows(inst: QDiscoInstance, thetas, algo: str, epsilon: float, jobs: int = 1):
    """One row per threshold, sorted by threshold."""
    def one(theta):
        row = dict.fromkeys(BENCH_COLUMNS, "")
        row["theta"] = theta
        t0 = time.perf_counter()
        try:
            sol = run_solver(inst.with_theta(theta), algo, epsilon)
        except (InfeasibleThresholdError, EmptyResult) as exc:
            log.warning("theta=%s: %s", theta, exc)
            return row
        row.update(density=sol.density, agreement=sol.agreement, size=sol.size,
                   upper_bound="" if sol.upper_bound is None else sol.upper_bound,
                   seconds=time.perf_counter() - t0)
        return row

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(one, thetas))
    return sorted(rows, key=lambda r: r["theta"])


def cmd_bench(args) -> int:
    graph, c = _load(args)
    inst = QDiscoInstance(graph, c, args.theta_sweep[0])
    rows = bench_rows(inst, args.theta_sweep, args.algo, args.epsilon, args.jobs)
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.DictWriter(out, fieldnames=BENCH_COLUMNS)
        w.writeheader()
        for row in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in row.items()})
    finally:
        if args.out:
            out.close()
    return EXIT_OK


def cmd_gen(args) -> int:
    print(f"graph seed: {args.seed}")
    graph = gen_gnm(args.n, args.m, args.seed)
    io.write_edge_list(f"{args.out_prefix}.edges", graph)
    if args.uniform_opinions:
        d, seed = args.uniform_opinions
        print(f"opinion seed: {seed}")
        P = gen_uniform_opinions(args.n, d, seed)
        io.write_opinions(f"{args.out_prefix}.opinions", graph, OpinionData(matrix=P))
    else:
        seed = DEFAULT_SEED if args.bimodal is None else args.bimodal
        print(f"agreement seed: {seed}")
        c = gen_bimodal_agreements(args.n, seed, stddev=args.stddev)
        io.write_opinions(f"{args.out_prefix}.agreements", graph, OpinionData(agreements=c))
    return EXIT_OK


def cmd_reduce(args) -> int:
    graph = io.load_edge_list(args.graph)
    inst = damks_gadget(graph, args.k)
    io.write_edge_list(f"{args.out_prefix}.edges", inst.graph)
    io.write_opinions(f"{args.out_prefix}.agreements", inst.graph,
                      OpinionData(agreements=inst.c))
    with open(f"{args.out_prefix}.json", "w", encoding="utf-8") as fh:
        json.dump({"theta": inst.theta, "k": args.k}, fh)
        fh.write("\n")
    print(f"gadget: n={inst.n} m={inst.graph.m} theta={inst.theta}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdisco", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    _add_input_args(s)
    s.add_argument("--theta", type=float, required=True)
    s.add_argument("--algo", choices=["lagrange", "peel", "af", "exact"], default="peel")
    s.add_argument("--epsilon", type=float, default=1e-6)
    s.add_argument("--max-n", type=int, default=20, help="size limit for --algo exact")
    s.add_argument("--out", help="write the result record here")
    s.add_argument("--json", action="store_true", help="print the record as JSON")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="sweep theta and write CSV")
    _add_input_args(b)
    b.add_argument("--theta-sweep", type=_sweep, required=True, metavar="LO:HI:STEP")
    b.add_argument("--algo", choices=["lagrange", "peel", "af", "exact"], default="peel")
    b.add_argument("--epsilon", type=float, default=1e-6)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", help="CSV path (default stdout)")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("n", type=int)
    g.add_argument("m", type=int)
    kind = g.add_mutually_exclusive_group()
    kind.add_argument("--bimodal", type=int, metavar="SEED",
                      help="bimodal Gaussian agreements (default)")
    kind.add_argument("--uniform-opinions", type=int, nargs=2, metavar=("D", "SEED"),
                      help="uniform [-1,1] opinion vectors of dimension D")
    g.add_argument("--stddev", action="store_true",
                   help="read the bimodal spreads as standard deviations")
    g.add_argument("--seed", type=int, default=DEFAULT_SEED, help="graph seed")
    g.add_argument("--out-prefix", required=True)
    g.set_defaults(func=cmd_gen)

    o = sub.add_parser("oracle", help="exhaustive optimum (small graphs)")
    _add_input_args(o)
    o.add_argument("--theta", type=float, required=True)
    o.add_argument("--max-n", type=int, default=20)
    o.add_argument("--out")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_oracle, epsilon=None)

    r = sub.add_parser("reduce", help="write the Dam-k-S gadget instance")
    r.add_argument("graph")
    r.add_argument("k", type=int)
    r.add_argument("--out-prefix", required=True)
    r.set_defaults(func=cmd_reduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except InfeasibleThresholdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except EmptyResult as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
