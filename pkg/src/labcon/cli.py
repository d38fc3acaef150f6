"""Command-line front end (``lcp``).

Exit codes: 0 YES / valid, 1 NO / invalid, 2 input error, 3 budget or
timeout, 4 solver disagreement or failed certificate during ``bench``.
"""

from __future__ import annotations

import argparse
import csv
import json
import multiprocessing as mp
import signal
import sys
import time
from contextlib import contextmanager
from pathlib import Path

from . import io
from .branch import BranchConfig, solve_branch
from .decomposition import heuristic_decompose, nicify, validate
from .errors import (
    BudgetExceeded,
    InvalidStep,
    LabconError,
    NotAPartition,
    RepresentativeMismatch,
)
from .graph import (
    ContractionSequence,
    InstancePair,
    LabeledGraph,
    apply_sequence,
    check_witness,
    union_graph,
    witness_to_sequence,
)
from .oracle import DEFAULT_BUDGET, solve_bruteforce, solve_maxcommon
from .twdp import solve_twdp

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_DISAGREE = 4

ALGOS = ("bruteforce", "branch", "twdp")
AUTO_BRUTEFORCE_MAX_K = 4


class _Timeout(Exception):
    pass


@contextmanager
def _time_limit(seconds):
    if not seconds:
        yield
        return

    def handler(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def _err(msg):
    print(f"lcp: {msg}", file=sys.stderr)


def choose_algo(inst: InstancePair, algo: str, have_td: bool) -> str:
    if algo != "auto":
        return algo
    if inst.k <= AUTO_BRUTEFORCE_MAX_K:
        return "bruteforce"
    return "twdp" if have_td else "branch"


def run_algo(inst, algo, td=None, budget=DEFAULT_BUDGET, no_prune=False,
             workers=1, branch_cfg=None, trace=None):
    if algo == "bruteforce":
        return solve_bruteforce(inst, prune=not no_prune, budget=budget, workers=workers)
    if algo == "branch":
        return solve_branch(inst, branch_cfg or BranchConfig())
    if algo == "twdp":
        u = union_graph(inst)
        if td is None:
            td = heuristic_decompose(u)
        return solve_twdp(inst, nicify(td, u), trace=trace)
    raise ValueError(f"unknown algorithm {algo!r}")


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    try:
        inst = io.read_instance(args.instance)
        td = None
        if args.td:
            if args.algo not in ("twdp", "auto"):
                _err("--td applies only to --algo twdp or auto")
                return EXIT_INPUT
            td = io.parse_td(io._read(args.td), inst.g.vertices, args.td)
        algo = choose_algo(inst, args.algo, td is not None)
        if args.trace and algo != "twdp":
            _err("--trace is only available for the tree-decomposition solver")
            return EXIT_INPUT
        cfg = BranchConfig(args.coloring, args.node_budget, args.order)
        trace = open(args.trace, "w") if args.trace else None
        try:
            with _time_limit(args.timeout):
                res = run_algo(inst, algo, td, args.budget, args.no_prune,
                               args.workers, cfg, trace)
        finally:
            if trace is not None:
                trace.close()
    except (BudgetExceeded, _Timeout) as exc:
        _err(str(exc) or "time limit reached")
        return EXIT_BUDGET
    except (LabconError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT

    print(res.answer)
    if args.cert and res.yes:
        if args.cert_format == "witness":
            io.write_certificate(args.cert, res.certificate)
        else:
            io.write_certificate(args.cert, witness_to_sequence(res.certificate, inst.g))
    if args.stats:
        stats = dict(res.stats)
        stats["algo"] = algo
        stats["answer"] = res.answer
        Path(args.stats).write_text(json.dumps(stats, indent=2, sort_keys=True) + "\n")
    return EXIT_YES if res.yes else EXIT_NO


# ---------------------------------------------------------------------------
# check


def verify_certificate(inst: InstancePair, cert) -> list[str]:
    """Problems with ``cert`` as a proof for ``inst``; empty when it is valid."""
    if isinstance(cert, ContractionSequence):
        try:
            result = apply_sequence(inst.g, cert)
        except InvalidStep as exc:
            return [str(exc)]
        if result == inst.h:
            return []
        problems = []
        if result.vertex_set != inst.h.vertex_set:
            problems.append(
                f"surviving vertices {sorted(result.vertex_set)} differ from V(H) {sorted(inst.h.vertex_set)}"
            )
        else:
            for e in sorted(result.edge_set() - inst.h.edge_set()):
                problems.append(f"extra edge {e} after contraction")
            for e in sorted(inst.h.edge_set() - result.edge_set()):
                problems.append(f"missing edge {e} after contraction")
        return problems
    try:
        report = check_witness(inst, cert)
    except (NotAPartition, RepresentativeMismatch) as exc:
        return [str(exc)]
    return [str(v) for v in report.violations]


def cmd_check(args) -> int:
    try:
        inst = io.read_instance(args.instance)
        cert = io.read_certificate(args.certificate)
    except LabconError as exc:
        _err(str(exc))
        return EXIT_INPUT
    problems = verify_certificate(inst, cert)
    if problems:
        print("INVALID")
        for p in problems:
            print(f"  {p}")
        return EXIT_NO
    print("VALID")
    return EXIT_YES


# ---------------------------------------------------------------------------
# generate


def cmd_generate(args) -> int:
    from . import reductions as red

    cert = None
    try:
        fam = args.family
        if fam in ("1in3sat", "nae34"):
            if not args.cnf:
                _err(f"{fam} needs --cnf")
                return EXIT_INPUT
            f = io.parse_dimacs(io._read(args.cnf), args.cnf)
            semantics = "oneinthree" if fam == "1in3sat" else "nae"
            inst = red.gen_from_1in3sat(f) if fam == "1in3sat" else red.gen_from_nae34sat(f)
            if args.emit_cert:
                ok, assignment = red.sat_bruteforce(f, semantics)
                if ok:
                    which = "oneinthree" if fam == "1in3sat" else "nae34"
                    cert = red.certificate_from_assignment(f, assignment, which)
        elif fam == "crossmatch":
            cm = io.parse_crossmatch(io._read(args.input), args.input)
            inst = red.gen_from_crossmatching(cm)
            if args.emit_cert:
                matching = red.crossmatch_bruteforce(cm)
                if matching is not None:
                    cert = red.certificate_crossmatch(matching)
        elif fam == "pvc":
            p = io.parse_pvc(io._read(args.input), args.input)
            inst = red.gen_from_pvc(p)
            if args.emit_cert:
                cover = red.pvc_bruteforce(p)
                if cover is not None:
                    cert = red.certificate_pvc(p, cover)
        else:
            gi = red.gen_random(args.n, args.k, args.seed, args.mode, args.density)
            inst = gi.instance
            cert = gi.certificate
    except (LabconError, ValueError, TypeError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    io.write_instance(args.output, inst, comment=f"generated by lcp generate {args.family}")
    print(f"wrote {args.output}: |V(G)|={inst.g.num_vertices} |V(H)|={inst.h.num_vertices}")
    if args.emit_cert:
        if cert is None:
            print("no certificate: the source instance has no solution or the family gives none")
        else:
            io.write_certificate(args.emit_cert, cert)
            print(f"wrote {args.emit_cert}")
    return 0


# ---------------------------------------------------------------------------
# decompose


def cmd_decompose(args) -> int:
    try:
        inst = io.read_instance(args.instance)
    except LabconError as exc:
        _err(str(exc))
        return EXIT_INPUT
    u = union_graph(inst)
    td = heuristic_decompose(u)
    report = validate(td, u)
    if not report.valid:
        _err("internal error: heuristic decomposition failed validation")
        return EXIT_INPUT
    io.Path(args.output).write_text(io.format_td(td, inst.g.vertices))
    print(f"width {report.width}")
    return 0


# ---------------------------------------------------------------------------
# maxcommon


def cmd_maxcommon(args) -> int:
    try:
        inst = io.read_instance(args.instance)
        with _time_limit(args.timeout):
            res = solve_maxcommon(inst.g, inst.h, args.k, args.budget)
    except (BudgetExceeded, _Timeout) as exc:
        _err(str(exc) or "time limit reached")
        return EXIT_BUDGET
    except (LabconError, ValueError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    print(res.answer)
    if res.yes:
        print(f"c common graph: vertices {sorted(res.common.vertices)} edges {res.common.edges()}")
        print(f"c |S1|={len(res.seq_g)} |S2|={len(res.seq_h)}")
    return EXIT_YES if res.yes else EXIT_NO


# ---------------------------------------------------------------------------
# bench

CSV_COLUMNS = ["instance", "algo", "answer", "ms", "stat1", "stat2", "verified"]
STAT_KEYS = {
    "bruteforce": ("partitions", "steps"),
    "branch": ("nodes", "max_branching"),
    "twdp": ("max_table", "width"),
}


def _bench_worker(path, algo, budget, conn):
    try:
        inst = io.read_instance(path)
        t0 = time.perf_counter()
        res = run_algo(inst, algo, budget=budget)
        ms = (time.perf_counter() - t0) * 1000
        verified = ""
        if res.yes:
            verified = "true" if check_witness(inst, res.certificate).valid else "false"
        k1, k2 = STAT_KEYS[algo]
        conn.send((res.answer, ms, res.stats.get(k1, ""), res.stats.get(k2, ""), verified))
    except BudgetExceeded:
        conn.send(("BUDGET", "", "", "", ""))
    except Exception as exc:  # reported as a row, never swallowed silently
        conn.send(("ERROR", "", type(exc).__name__, str(exc), ""))
    finally:
        conn.close()


def _run_jobs(jobs, timeout, parallel):
    """Run ``(path, algo, budget)`` jobs in child processes with a wall-clock limit each."""
    ctx = mp.get_context("fork")
    results = {}
    pending = list(jobs)
    running = []
    while pending or running:
        while pending and len(running) < parallel:
            job = pending.pop(0)
            recv, send = ctx.Pipe(duplex=False)
            proc = ctx.Process(target=_bench_worker, args=(*job, send))
            proc.start()
            send.close()
            running.append((job, proc, recv, time.monotonic()))
        still = []
        for job, proc, recv, started in running:
            if recv.poll():
                try:
                    results[job] = recv.recv()
                except EOFError:
                    results[job] = ("ERROR", "", "crash", "", "")
                proc.join()
            elif not proc.is_alive():
                results[job] = ("ERROR", "", "crash", "", "")
            elif timeout and time.monotonic() - started > timeout:
                proc.terminate()
                proc.join()
                results[job] = ("TIMEOUT", "", "", "", "")
            else:
                still.append((job, proc, recv, started))
        running = still
        if running:
            time.sleep(0.005)
    return results


def _answers_disagree(inst, algos, budget) -> bool:
    answers = set()
    for algo in algos:
        try:
            answers.add(run_algo(inst, algo, budget=budget).answer)
        except BudgetExceeded:
            continue
    return len(answers) > 1


def minimize_disagreement(inst: InstancePair, algos, budget=10**6) -> InstancePair:
    """Greedily delete edges and free vertices while the solvers still disagree."""
    cur = inst
    changed = True
    while changed:
        changed = False
        for u, v in cur.g.edges():
            g2 = LabeledGraph(cur.g.vertices, [e for e in cur.g.edges() if e != (u, v)])
            cand = InstancePair(g2, cur.h)
            if _answers_disagree(cand, algos, budget):
                cur, changed = cand, True
                break
        if changed:
            continue
        for x in cur.free_vertices():
            cand = InstancePair(cur.g.induced(set(cur.g.vertices) - {x}), cur.h)
            if _answers_disagree(cand, algos, budget):
                cur, changed = cand, True
                break
    return cur


def cmd_bench(args) -> int:
    corpus = Path(args.dir)
    files = sorted(corpus.glob("*.lcp")) if corpus.is_dir() else []
    if not files:
        _err(f"no .lcp instances found in {args.dir}")
        return EXIT_INPUT
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGOS:
            _err(f"unknown algorithm {a!r}")
            return EXIT_INPUT
    jobs = [(str(f), a, args.budget) for f in files for a in algos]
    results = _run_jobs(jobs, args.timeout, max(1, args.jobs))

    rows = []
    for f in files:
        for a in algos:
            answer, ms, s1, s2, verified = results[(str(f), a, args.budget)]
            ms = f"{ms:.3f}" if ms != "" else ""
            rows.append([f.name, a, answer, ms, s1, s2, verified])
    rows.sort(key=lambda r: (r[0], r[1]))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(out)
        writer.writerow(CSV_COLUMNS)
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()

    status = 0
    for f in files:
        mine = [r for r in rows if r[0] == f.name]
        if any(r[2] == "YES" and r[6] != "true" for r in mine):
            _err(f"{f.name}: a YES certificate failed verification")
            status = EXIT_DISAGREE
        decided = {r[2] for r in mine if r[2] in ("YES", "NO")}
        if len(decided) > 1:
            inst = io.read_instance(f)
            small = minimize_disagreement(inst, algos)
            repro = Path(args.repro_dir or corpus) / f"{f.stem}.repro.lcp"
            io.write_instance(repro, small, comment=f"minimized disagreement from {f.name}")
            _err(f"{f.name}: solvers disagree; minimized repro written to {repro}")
            return EXIT_DISAGREE
    errors = [r for r in rows if r[2] == "ERROR"]
    for r in errors:
        _err(f"{r[0]} [{r[1]}]: {r[4]} {r[5]}")
    if status:
        return status
    return EXIT_INPUT if errors else 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lcp", description="Labeled contractibility toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide whether H is a labeled contraction of G")
    p.add_argument("instance")
    p.add_argument("--algo", choices=ALGOS + ("auto",), default="auto")
    p.add_argument("--td", help="PACE .td decomposition of G ∪ H (twdp only)")
    p.add_argument("--cert", help="write a certificate here on YES")
    p.add_argument("--cert-format", choices=("sequence", "witness"), default="sequence")
    p.add_argument("--stats", help="write solver statistics as JSON")
    p.add_argument("--trace", help="write every DP table to this file (twdp only)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="brute-force step budget")
    p.add_argument("--paper-faithful", "--no-prune", dest="no_prune", action="store_true",
                   help="brute force checks complete partitions only (no pruning)")
    p.add_argument("--workers", type=int, default=1, help="brute-force worker processes")
    p.add_argument("--coloring", choices=("greedy", "exact"), default="greedy")
    p.add_argument("--order", choices=("frontier", "label"), default="frontier")
    p.add_argument("--node-budget", type=int, default=10**7)
    p.add_argument("--timeout", type=float, default=None, help="seconds")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="verify a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write a generated instance")
    p.add_argument("family", choices=("1in3sat", "nae34", "crossmatch", "pvc", "random"))
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--cnf", help="DIMACS input for 1in3sat / nae34")
    p.add_argument("--input", help="PVC or cross-matching input file")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("yes", "perturbed"), default="yes")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--emit-cert", help="also write the forward certificate here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", help="heuristic tree decomposition of G ∪ H")
    p.add_argument("instance")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("maxcommon", help="maximum common labeled contraction of G and H")
    p.add_argument("instance")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--timeout", type=float, default=None)
    p.set_defaults(func=cmd_maxcommon)

    p = sub.add_parser("bench", help="run several solvers over a corpus and compare")
    p.add_argument("--dir", required=True)
    p.add_argument("--algos", default="bruteforce,branch,twdp")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    p.add_argument("--out", help="CSV output path (stdout if omitted)")
    p.add_argument("--repro-dir", help="where to write minimized disagreement repros")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    sys.setrecursionlimit(max(10000, sys.getrecursionlimit()))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
