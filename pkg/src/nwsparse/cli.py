"""Command-line front end: solve, verify, generate, bench."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .core import (Deadline, Inapplicable, Instance, NWSError, OracleResult, ParseError, Property,
                   Timeout, feedback_edge_parameter, format_rational, log, verify_solution)
from .formats import format_instance, format_solution, parse_instance, parse_solution
from .oracle import (solve_branching_ell, solve_center_enumeration, solve_deletion_side,
                     solve_subset_enumeration)
from .reductions import (CnfFormula, HittingSetInstance, RandomParams, from_3sat_connectivity,
                         from_3sat_stars, from_hamiltonian_cycle, from_hitting_set,
                         from_multicolored_clique, from_vertex_cover_clique, parse_dimacs_cnf,
                         parse_dimacs_graph, random_instance)
from .stars_fpt_c import solve_snws
from .stars_xp import solve_stars_xp
from .tree_support import solve_forest_support

EXIT_YES, EXIT_NO, EXIT_USAGE, EXIT_INAPPLICABLE, EXIT_TIMEOUT = 0, 1, 2, 3, 4
ALGOS = ("auto", "oracle", "deletion", "branch-ell", "centers", "tree-support", "stars-xp", "stars-fpt-c")
KINDS = ("3sat-stars", "3sat-conn", "hamcycle", "hitting-set", "mcc", "vc-clique", "random")


@dataclass
class RunConfig:
    command: str
    algo: str = "auto"
    mode: str = "decide"
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    seed: int = 0
    cap: int = 24
    t_override: int | None = None
    timeout: float | None = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)


def auto_select(instance: Instance) -> tuple[str, str]:
    """Pick an algorithm from the instance's parameters; returns (algo, reason)."""
    t = feedback_edge_parameter(instance)
    if instance.property is Property.CONNECTIVITY:
        if t == 0:
            return "tree-support", "connectivity with t = 0"
        if len(instance.relevant_edges) <= 20:
            return "oracle", f"{len(instance.relevant_edges)} relevant edges"
        return "branch-ell", f"connectivity with t = {t}"
    if instance.graph.unit_weights and instance.c <= 8:
        return "stars-fpt-c", f"unit weights and c = {instance.c}"
    return "stars-xp", f"stars with t = {t}"


def solve(instance: Instance, algo: str, mode: str = "decide", cap: int = 24,
          t_override: int | None = None, timeout: float | None = None, jobs: int = 1) -> OracleResult:
    if algo == "auto":
        algo, why = auto_select(instance)
        log.info("auto-selected %s (%s)", algo, why)
    deadline = Deadline(timeout)
    if algo == "oracle":
        return solve_subset_enumeration(instance, mode, cap=cap, deadline=deadline)
    if algo == "deletion":
        return solve_deletion_side(instance, deadline=deadline)
    if algo == "branch-ell":
        return solve_branching_ell(instance, deadline=deadline)
    if algo == "centers":
        return solve_center_enumeration(instance, mode, deadline=deadline)
    if algo == "tree-support":
        return solve_forest_support(instance)
    if algo == "stars-xp":
        return solve_stars_xp(instance, mode, t_override=t_override, jobs=jobs, deadline=deadline)
    if algo == "stars-fpt-c":
        return solve_snws(instance, deadline=deadline)
    raise ValueError(f"unknown algorithm {algo!r}")


def _write(path: str | None, text: str, out: TextIO) -> None:
    if path is None or path == "-":
        out.write(text)
    else:
        Path(path).write_text(text)


def _cmd_solve(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    instance = parse_instance(Path(cfg.inputs[0]).read_text())
    result = solve(instance, cfg.algo, cfg.mode, cfg.cap, cfg.t_override, cfg.timeout, cfg.jobs)
    _write(cfg.output, format_solution(instance, result), out)
    return EXIT_YES if result.answer else EXIT_NO


def _cmd_verify(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    instance = parse_instance(Path(cfg.inputs[0]).read_text())
    sf = parse_solution(Path(cfg.inputs[1]).read_text())
    if not sf.feasible:
        out.write("NOTHING TO VERIFY: solution file says NO\n")
        return EXIT_NO
    ids, problems = set(), []
    for u, v in sf.edges:
        e = instance.graph.edge_id(u, v)
        if e is None:
            problems.append(f"edge {u + 1} {v + 1} is not in the graph")
        else:
            ids.add(e)
    report = verify_solution(instance, ids)
    problems += report.violations
    if sf.declared_count != report.edge_count:
        problems.append(f"declared edge count {sf.declared_count} != {report.edge_count}")
    if sf.declared_weight != report.total_weight:
        problems.append(f"declared weight {format_rational(sf.declared_weight)} != "
                        f"{format_rational(report.total_weight)}")
    for i, center in sf.centers.items():
        if not 0 <= i < instance.c:
            problems.append(f"certificate for unknown community {i + 1}")
            continue
        comm = instance.communities[i]
        if center not in comm or any(instance.graph.edge_id(center, w) not in ids for w in comm if w != center):
            problems.append(f"community {i + 1}: vertex {center + 1} is not a center")
    if problems:
        out.write("INVALID\n" + "".join(f"  {p}\n" for p in problems))
        return EXIT_NO
    out.write(f"VALID {report.edge_count} {format_rational(report.total_weight)}\n")
    return EXIT_YES


def _sets(text: str) -> list[frozenset[int]]:
    """'1,2;2,3' -> [{0,1},{1,2}] (1-based on the command line)."""
    return [frozenset(int(x) - 1 for x in part.split(",") if x) for part in text.split(";") if part]


def _cmd_generate(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    kind, x = cfg.extra["kind"], cfg.extra
    if kind in ("3sat-stars", "3sat-conn"):
        if not x.get("dimacs_cnf"):
            raise ParseError("--dimacs-cnf is required for SAT kinds")
        formula: CnfFormula = parse_dimacs_cnf(Path(x["dimacs_cnf"]).read_text())
        inst = (from_3sat_stars if kind == "3sat-stars" else from_3sat_connectivity)(formula)
    elif kind in ("hamcycle", "mcc", "vc-clique"):
        if not x.get("graph"):
            raise ParseError("--graph is required for this kind")
        graph = parse_dimacs_graph(Path(x["graph"]).read_text())
        if kind == "hamcycle":
            inst = from_hamiltonian_cycle(graph)
        elif kind == "vc-clique":
            inst = from_vertex_cover_clique(graph, x["k"])
        else:
            inst = from_multicolored_clique(graph, _sets(x["colors"]), x.get("padding"))
    elif kind == "hitting-set":
        inst = from_hitting_set(HittingSetInstance(x["universe"], tuple(_sets(x["sets"])), x["k"]))
    else:
        err.write(f"seed={cfg.seed}\n")
        inst = random_instance(_random_params(x), cfg.seed)
    _write(cfg.output, format_instance(inst, comment=f"generated by nws ({kind})"), out)
    if cfg.output and cfg.output != "-":
        meta = dict(inst.meta)
        meta.setdefault("kind", kind)
        Path(cfg.output + ".meta.json").write_text(json.dumps(meta, indent=1, sort_keys=True) + "\n")
    return EXIT_YES


def _random_params(x: dict) -> RandomParams:
    return RandomParams(n=x["n"], edge_prob=x["edge_prob"], community_count=x["communities"],
                        size_range=(x["size_min"], x["size_max"]),
                        weight_range=(x["weight_min"], x["weight_max"]),
                        property=Property(x["property"]), ell=x.get("ell"))


def _bench_one(task):
    name, text, algo, mode, cap, timeout, timing = task
    instance = parse_instance(text)
    start = time.perf_counter()
    try:
        res = solve(instance, algo, mode, cap=cap, timeout=timeout)
        answer = "yes" if res.answer else "no"
        edges = str(len(res.solution.edge_set)) if res.answer else ""
        weight = format_rational(res.solution.weight(instance)) if res.answer else ""
    except Timeout:
        answer, edges, weight = "timeout", "", ""
    except Inapplicable:
        answer, edges, weight = "inapplicable", "", ""
    millis = round((time.perf_counter() - start) * 1000) if timing else 0
    return [name, algo, answer, edges, weight, str(millis)]


def _cmd_bench(cfg: RunConfig, out: TextIO, err: TextIO) -> int:
    x = cfg.extra
    items = [(Path(p).name, Path(p).read_text()) for p in cfg.inputs]
    if x.get("random"):
        err.write(f"seed={cfg.seed}\n")
        params = _random_params(x)
        for k in range(x["random"]):
            items.append((f"random-{cfg.seed}-{k}", format_instance(random_instance(params, cfg.seed + k))))
    algos = [a for a in cfg.algo.split(",") if a]
    tasks = [(name, text, a, cfg.mode, cfg.cap, cfg.timeout, not x.get("no_timing"))
             for name, text in items for a in algos]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "algo", "answer", "edges", "weight", "millis"])
    writer.writerows(rows)
    _write(cfg.output, buf.getvalue(), out)
    return EXIT_YES


COMMANDS = {"solve": _cmd_solve, "verify": _cmd_verify, "generate": _cmd_generate, "bench": _cmd_bench}


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        return COMMANDS[cfg.command](cfg, out, err)
    except (ParseError, OSError, ValueError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except Inapplicable as exc:
        err.write(f"inapplicable: {exc}\n")
        return EXIT_INAPPLICABLE
    except Timeout as exc:
        err.write(f"timeout: {exc}\n")
        return EXIT_TIMEOUT
    except NWSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nws", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--algo", default="auto")
        sp.add_argument("--mode", choices=("decide", "optimize"), default="decide")
        sp.add_argument("--cap", type=int, default=24, help="relevant-edge limit for the oracle")
        sp.add_argument("--t-override", type=int)
        sp.add_argument("--timeout", type=float)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("-o", "--output")

    def random_opts(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n", type=int, default=6)
        sp.add_argument("--edge-prob", type=float, default=0.6)
        sp.add_argument("--communities", type=int, default=3)
        sp.add_argument("--size-min", type=int, default=2)
        sp.add_argument("--size-max", type=int, default=4)
        sp.add_argument("--weight-min", type=int, default=1)
        sp.add_argument("--weight-max", type=int, default=1)
        sp.add_argument("--property", choices=("stars", "conn"), default="conn")
        sp.add_argument("--ell", type=int)

    s = sub.add_parser("solve", help="solve an instance file")
    s.add_argument("instance")
    common(s)
    v = sub.add_parser("verify", help="check a solution file against an instance")
    v.add_argument("instance")
    v.add_argument("solution")
    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--dimacs-cnf")
    g.add_argument("--graph", help="DIMACS 'p edge' graph file")
    g.add_argument("--universe", type=int)
    g.add_argument("--sets", help="family as '1,2;2,3' (1-based)")
    g.add_argument("--colors", help="color classes as '1,2;3,4' (1-based)")
    g.add_argument("--k", type=int)
    g.add_argument("--padding", type=int)
    g.add_argument("-o", "--output")
    random_opts(g)
    b = sub.add_parser("bench", help="run algorithms over instances and emit CSV")
    b.add_argument("instances", nargs="*")
    b.add_argument("--random", type=int, default=0, help="also bench this many random instances")
    b.add_argument("--no-timing", action="store_true", help="write 0 in the millis column")
    common(b)
    random_opts(b)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    extra = {k: v for k, v in vars(args).items()}
    cfg = RunConfig(command=args.command, algo=getattr(args, "algo", "auto"), mode=getattr(args, "mode", "decide"),
                    output=getattr(args, "output", None), seed=getattr(args, "seed", 0),
                    cap=getattr(args, "cap", 24), t_override=getattr(args, "t_override", None),
                    timeout=getattr(args, "timeout", None), jobs=getattr(args, "jobs", 1), extra=extra)
    if args.command == "solve":
        cfg.inputs = [args.instance]
    elif args.command == "verify":
        cfg.inputs = [args.instance, args.solution]
    elif args.command == "bench":
        cfg.inputs = list(args.instances)
    if args.command in ("solve", "bench"):
        bad = [a for a in cfg.algo.split(",") if a not in ALGOS]
        if bad:
            sys.stderr.write(f"error: unknown algorithm {bad[0]!r}; choose from {', '.join(ALGOS)}\n")
            return EXIT_USAGE
    return run(cfg)
