"""Command-line interface.

Exit status: 0 on a completed run (YES or NO), 2 on a parse error, 3 on a
usage or precondition error.
"""

from __future__ import annotations

import argparse
import signal
import sys
import time
from pathlib import Path

from . import by_s, driver, oracle
from .instance import (
    EsfvsInstance, ParseError, SfvsInstance, esfvs_to_sfvs, format_solution, gen_planted,
    gen_random, parse, parse_vertex_list, serialize, sfvs_to_esfvs,
)
from .multiway import MwcInstance, solve_mwc
from .reduction import IGNORE, DisjointInstance, reduce

EXIT_OK, EXIT_PARSE, EXIT_USAGE = 0, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _edge_instance(path: str) -> EsfvsInstance:
    inst = parse(_read(path))
    if isinstance(inst, SfvsInstance):
        return sfvs_to_esfvs(inst)
    if isinstance(inst, MwcInstance):
        raise UsageError("expected an esfvs or sfvs instance, got mwc")
    return inst


def _labels(g):
    return {v: v + 1 for v in g.vertices}


def cmd_solve(args, out):
    inst = _edge_instance(args.file)
    t0 = time.perf_counter()
    if args.by_s:
        stats = by_s.SolverStats()
        w = by_s.solve_by_s(inst, stats)
        info = f"phase1_nodes={stats.phase1_nodes} phase3_calls={stats.phase3_calls}"
    else:
        stats = driver.DriverStats()
        order = driver.compression_order(inst, args.order_seed)
        w = driver.solve(inst, stats, order)
        info = (f"compressions={stats.compressions} branches={stats.branches} "
                f"ignored={stats.ignored} phase1_nodes={stats.by_s.phase1_nodes}")
    print(f"c time {time.perf_counter() - t0:.3f}s {info}", file=sys.stderr)
    out.write(format_solution(w, _labels(inst.graph)))


def cmd_oracle(args, out):
    inst = _edge_instance(args.file)
    out.write(format_solution(oracle.brute_force(inst), _labels(inst.graph)))


def cmd_reduce(args, out):
    inst = _edge_instance(args.file)
    z = parse_vertex_list(_read(args.z))
    if not z <= inst.graph.vertices:
        raise UsageError("Z mentions a vertex outside the instance")
    try:
        d = DisjointInstance(inst, z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = reduce(d)
    if res is IGNORE:
        out.write("IGNORE\n")
        return
    red = res.instance
    comments = [
        "removed " + " ".join(str(v + 1) for v in sorted(res.removed)),
        "z " + " ".join(str(v + 1) for v in sorted(red.z)),
    ]
    out.write(serialize(red.inst, comments))


def cmd_mwc(args, out):
    inst = parse(_read(args.file))
    if not isinstance(inst, MwcInstance):
        raise UsageError("expected an mwc instance")
    out.write(format_solution(solve_mwc(inst), _labels(inst.graph)))


def cmd_gen(args, out):
    try:
        if args.kind == "random":
            if len(args.params) != 4:
                raise UsageError("gen random needs: n m s_count k")
            n, m, s, k = args.params
            out.write(serialize(gen_random(n, m, s, k, args.seed), [f"random n={n} m={m} s={s} k={k} seed={args.seed}"]))
        else:
            if len(args.params) != 2:
                raise UsageError("gen planted needs: n k")
            n, k = args.params
            inst, hubs = gen_planted(n, k, args.seed)
            planted = " ".join(str(v + 1) for v in sorted(hubs))
            out.write(serialize(inst, [f"planted n={n} k={k} seed={args.seed}", f"planted-set {planted}"]))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_convert(args, out):
    inst = parse(_read(args.file))
    if isinstance(inst, MwcInstance):
        raise UsageError("convert works on esfvs and sfvs instances")
    if args.direction == "to-edge":
        res = inst if isinstance(inst, EsfvsInstance) else sfvs_to_esfvs(inst)
    else:
        res = inst if isinstance(inst, SfvsInstance) else esfvs_to_sfvs(inst)
    out.write(serialize(res))


class _Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise _Timeout()


def cmd_bench(args, out):
    root = Path(args.dir)
    if not root.is_dir():
        raise UsageError(f"{args.dir} is not a directory")
    files = sorted(p for p in root.iterdir() if p.is_file() and p.suffix in (".txt", ".esfvs", ".sfvs", ".cnf", ".in"))
    header = f"{'instance':<28} {'n':>5} {'|S|':>5} {'k':>3} {'answer':>7} {'time_s':>8} {'compr':>6} {'branch':>7} {'ph1':>7} {'ph3':>7}"
    out.write(header + "\n")
    old = signal.signal(signal.SIGALRM, _alarm)
    try:
        for p in files:
            try:
                inst = _edge_instance(str(p))
            except (ParseError, UsageError) as exc:
                print(f"c skip {p.name}: {exc}", file=sys.stderr)
                continue
            stats = driver.DriverStats()
            t0 = time.perf_counter()
            signal.setitimer(signal.ITIMER_REAL, args.timeout)
            try:
                w = driver.solve(inst, stats)
                answer = "NO" if w is None else "YES"
            except _Timeout:
                answer = "TIMEOUT"
            finally:
                signal.setitimer(signal.ITIMER_REAL, 0)
            dt = time.perf_counter() - t0
            out.write(f"{p.name:<28} {inst.graph.n:>5} {len(inst.s_edges):>5} {inst.k:>3} {answer:>7} {dt:>8.3f} "
                      f"{stats.compressions:>6} {stats.branches:>7} {stats.by_s.phase1_nodes:>7} {stats.by_s.phase3_calls:>7}\n")
    finally:
        signal.signal(signal.SIGALRM, old)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="subsetfvs", description="Exact solver for (edge) subset feedback vertex set.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="solve by iterative compression (or directly with --by-s)")
    s.add_argument("file")
    s.add_argument("--by-s", action="store_true", help="use the |S|-parameterized solver alone")
    s.add_argument("--order-seed", type=int, default=None, help="permute the compression order")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("oracle", help="brute-force reference answer")
    s.add_argument("file")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("reduce", help="run the reduction engine on a disjoint instance")
    s.add_argument("file")
    s.add_argument("--z", required=True, help="file listing Z (1-based vertices)")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("mwc", help="solve a node multiway cut instance")
    s.add_argument("file")
    s.set_defaults(func=cmd_mwc)

    s = sub.add_parser("gen", help="generate an instance")
    s.add_argument("kind", choices=["random", "planted"])
    s.add_argument("params", nargs="*", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("convert", help="convert between the vertex and edge variants")
    s.add_argument("direction", choices=["to-edge", "to-vertex"])
    s.add_argument("file")
    s.set_defaults(func=cmd_convert)

    s = sub.add_parser("bench", help="solve every instance in a directory and print a table")
    s.add_argument("dir")
    s.add_argument("--timeout", type=float, default=60.0)
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
