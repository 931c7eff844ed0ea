"""``ipaths`` command-line front end.

Every command prints a report of ``key: value`` lines in a fixed order.
Exit status: 0 yes/optimal/PASS, 1 no/FAIL, 2 unknown/INCONCLUSIVE,
64 usage, 65 malformed or invalid input, 66 unreadable file, 70 oracle limit.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .errors import CycleError, IPathsError, OracleLimitError, ParseError, TriviallySatisfiableError, ValidationError
from .formats import (
    parse_cubic,
    parse_dimacs,
    parse_instance,
    parse_setcover,
    parse_witness,
    write_instance,
    write_setcover,
    write_witness,
)
from .graph import (
    require_dag,
    score_of_collection,
    score_of_path,
    validate_collection,
    validate_partition,
    validate_path,
)
from .oracles import brute_force_sat, brute_force_set_cover, brute_force_vertex_cover
from .reductions import (
    assignment_to_partition,
    cover_to_kpaths,
    cubic_vc_to_setcover,
    kpaths_to_cover,
    normalize_cnf,
    partition_to_assignment,
    sat3_to_ip,
    setcover_to_kip,
    vertex_cover_to_set_cover,
)
from .score import ExactScore, Ordering, approx_decimal, compare
from .solvers import (
    Answer,
    SolverBudget,
    decide_ip,
    decide_kip,
    exact_ip,
    exact_kip,
    greedy_kip,
    max_ip_dag,
)

EXIT_OK, EXIT_NO, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_NOINPUT, EXIT_LIMIT = 64, 65, 66, 70


class UsageError(Exception):
    pass


class Report:
    def __init__(self, out):
        self.out = out

    def __call__(self, key: str, value) -> None:
        print(f"{key}: {value}", file=self.out)

    def stats(self, graph) -> None:
        self("vertices", graph.vertex_count)
        self("edges", graph.edge_count)
        census = graph.weight_census()
        self("weights", " ".join(f"{w}x{c}" for w, c in sorted(census.items())) or "-")

    def score(self, key: str, s: ExactScore, digits: int) -> None:
        self(key, s)
        if digits > 0:
            self(f"{key}-log2", approx_decimal(s, digits))

    def witness(self, c) -> None:
        paths = c.paths if hasattr(c, "paths") else c.collection.paths
        self("paths", len(paths))
        for i, p in enumerate(paths):
            self(f"path[{i}]", " ".join(map(str, p.edges)))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"{path}: {exc.strerror}") from None


def _budget(args) -> SolverBudget:
    return SolverBudget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)


def _exit_for(answer: Answer) -> int:
    return {Answer.YES: EXIT_OK, Answer.NO: EXIT_NO, Answer.UNKNOWN: EXIT_UNKNOWN}[answer]


# --- generators -----------------------------------------------------------


def cmd_gen_ip(args, rep: Report) -> int:
    n, clauses = parse_dimacs(_read(args.cnf))
    rep("command", "gen-ip")
    try:
        f = normalize_cnf(clauses, n)
    except TriviallySatisfiableError as exc:
        rep("status", "trivially-satisfiable")
        rep("note", exc)
        return EXIT_OK
    inst = sat3_to_ip(f)
    Path(args.out).write_text(
        write_instance(inst.graph, target=inst.target, vertex_labels=inst.vertex_labels, edge_roles=inst.edge_roles),
        encoding="utf-8",
    )
    rep("variables", f.n)
    rep("clauses", f.m)
    rep.stats(inst.graph)
    rep("edges-closed-form", f"29m = {29 * f.m}")
    rep("vertices-closed-form", f"21m+2n = {21 * f.m + 2 * f.n}")
    rep.score("target", inst.target, args.decimal_digits)
    rep("output", args.out)
    return EXIT_OK


def cmd_gen_kip(args, rep: Report) -> int:
    sc = parse_setcover(_read(args.setcover))
    k = 3 if args.k is None else args.k
    if k < 3:
        raise UsageError("--k must be at least 3")
    inst = setcover_to_kip(sc, k)
    Path(args.out).write_text(
        write_instance(inst.graph, k=k, target=inst.target, vertex_labels=inst.vertex_labels, edge_roles=inst.edge_roles),
        encoding="utf-8",
    )
    rep("command", "gen-kip")
    rep("elements", sc.n)
    rep("sets", sc.m)
    rep("tau", sc.tau)
    rep("k", k)
    rep.stats(inst.graph)
    rep("required-paths", inst.required_paths)
    rep.score("target", inst.target, args.decimal_digits)
    rep("output", args.out)
    return EXIT_OK


def cmd_gen_setcover(args, rep: Report) -> int:
    g = parse_cubic(_read(args.cubic))
    sc = cubic_vc_to_setcover(g, args.tau)
    Path(args.out).write_text(write_setcover(sc), encoding="utf-8")
    rep("command", "gen-setcover")
    rep("graph-vertices", g.vertex_count)
    rep("graph-edges", len(g.edges))
    rep("elements", sc.n)
    rep("sets", sc.m)
    rep("tau", sc.tau)
    rep("output", args.out)
    return EXIT_OK


# --- solve / score --------------------------------------------------------


def _problem(args, inst) -> str:
    if args.problem:
        return args.problem
    if inst.k is not None or args.k is not None:
        return "kip"
    return "ip" if inst.target is not None else "max-ip"


def _k(args, inst) -> int:
    if inst.k is not None and args.k is not None and inst.k != args.k:
        raise UsageError(f"--k {args.k} conflicts with 'k {inst.k}' in the instance file")
    k = inst.k if inst.k is not None else args.k
    if k is None:
        raise UsageError("kip needs --k or a 'k' line in the instance file")
    return k


def cmd_solve(args, rep: Report) -> int:
    inst = parse_instance(_read(args.instance))
    problem = _problem(args, inst)
    mode = args.mode or "exact"
    if mode == "greedy" and problem != "kip":
        raise UsageError("--mode greedy is only available for --problem kip")
    k = _k(args, inst) if problem == "kip" else None
    graph, target = inst.graph, inst.target
    rep("command", "solve")
    rep("problem", problem)
    rep("mode", mode)
    if k is not None:
        rep("k", k)
    rep.stats(graph)
    if target is not None:
        rep.score("target", target, args.decimal_digits)

    start = time.perf_counter()
    if problem == "max-ip":
        res = max_ip_dag(graph)
        elapsed = time.perf_counter() - start
        rep.score("score", res.score, args.decimal_digits)
        rep("path", " ".join(map(str, res.best_path.edges)))
        answer = Answer.YES
        if target is not None:
            answer = Answer.YES if compare(res.score, target) is not Ordering.LESS else Answer.NO
            rep("verdict", answer.value)
        rep("optimal", "true")
        rep("time-seconds", f"{elapsed:.3f}")
        return _exit_for(answer)

    if problem == "ip":
        require_dag(graph)
    budget = _budget(args)
    if mode == "greedy":
        res = greedy_kip(graph, k)
        answer = Answer.UNKNOWN
        if target is not None and compare(res.score, target) is not Ordering.LESS:
            answer = Answer.YES
        witness, nodes, optimal = res.collection, res.nodes_explored, False
        score = res.score
    elif target is not None:
        verdict = decide_ip(graph, target, budget) if problem == "ip" else decide_kip(graph, k, target, budget)
        answer, witness, nodes, optimal = verdict.answer, verdict.witness, verdict.nodes_explored, None
        score = score_of_collection(graph, witness) if witness is not None else None
    else:
        res = exact_ip(graph, budget) if problem == "ip" else exact_kip(graph, k, budget)
        answer = Answer.YES if res.optimal else Answer.UNKNOWN
        witness, nodes, optimal, score = res.collection, res.nodes_explored, res.optimal, res.score
    elapsed = time.perf_counter() - start

    if target is not None:
        rep("verdict", answer.value)
    if score is not None:
        rep.score("score", score, args.decimal_digits)
    if witness is not None:
        rep.witness(witness)
        if args.witness_out:
            Path(args.witness_out).write_text(write_witness(witness), encoding="utf-8")
            rep("witness-file", args.witness_out)
    rep("nodes", nodes)
    if optimal is not None:
        rep("optimal", str(optimal).lower())
    rep("time-seconds", f"{elapsed:.3f}")
    if target is None and mode == "greedy":
        return EXIT_OK
    return _exit_for(answer)


def cmd_score(args, rep: Report) -> int:
    inst = parse_instance(_read(args.instance))
    wit = parse_witness(_read(args.witness))
    problem = args.problem or ("kip" if inst.k is not None else "ip")
    graph = inst.graph
    rep("command", "score")
    rep("problem", problem)
    rep.stats(graph)
    try:
        if problem == "max-ip":
            if len(wit.paths) != 1:
                raise ValidationError(f"max-ip witness must hold exactly one path, got {len(wit.paths)}")
            validate_path(graph, wit.paths[0])
            score = score_of_path(graph, wit.paths[0])
        elif problem == "ip":
            score = score_of_collection(graph, validate_partition(graph, wit))
        else:
            k = _k(args, inst)
            validate_collection(graph, wit)
            for i, p in enumerate(wit.paths):
                if len(p.edges) != k:
                    raise ValidationError(f"path {i} has {len(p.edges)} edges, expected k = {k}")
            score = score_of_collection(graph, wit)
    except ValidationError as exc:
        rep("valid", "false")
        rep("error", exc)
        rep("status", "FAIL")
        return EXIT_NO
    rep("valid", "true")
    rep("paths", len(wit.paths))
    rep.score("score", score, args.decimal_digits)
    if inst.target is None:
        rep("status", "PASS")
        return EXIT_OK
    rep.score("target", inst.target, args.decimal_digits)
    order = compare(score, inst.target)
    rep("comparison", {Ordering.LESS: "below target", Ordering.EQUAL: "equal to target", Ordering.GREATER: "above target"}[order])
    ok = order is not Ordering.LESS
    rep("verdict", "yes" if ok else "no")
    return EXIT_OK if ok else EXIT_NO


# --- verify ---------------------------------------------------------------


class _Checks:
    """Accumulates named PASS/FAIL/INCONCLUSIVE outcomes."""

    def __init__(self, rep: Report):
        self.rep = rep
        self.failed = False
        self.inconclusive = False

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.failed |= not ok
        self.rep(f"check {name}", ("PASS" if ok else "FAIL") + (f" ({detail})" if detail else ""))

    def unknown(self, name: str, detail: str) -> None:
        self.inconclusive = True
        self.rep(f"check {name}", f"INCONCLUSIVE ({detail})")

    def guard(self, name: str, fn):
        """Run a translation; an exception becomes a FAIL line."""
        try:
            return fn()
        except IPathsError as exc:
            self.check(name, False, f"{type(exc).__name__}: {exc}")
            return None

    def finish(self) -> int:
        if self.failed:
            status, code = "FAIL", EXIT_NO
        elif self.inconclusive:
            status, code = "INCONCLUSIVE", EXIT_UNKNOWN
        else:
            status, code = "PASS", EXIT_OK
        self.rep("status", status)
        return code


def _verify_cnf(args, rep: Report, checks: _Checks) -> None:
    n, clauses = parse_dimacs(_read(args.source))
    try:
        f = normalize_cnf(clauses, n)
    except TriviallySatisfiableError:
        rep("note", "every clause is a tautology; no instance to build")
        checks.check("trivially-satisfiable", True)
        return
    oracle = brute_force_sat(f)
    inst = sat3_to_ip(f)
    rep("variables", f.n)
    rep("clauses", f.m)
    rep.stats(inst.graph)
    rep("oracle", "sat" if oracle is not None else "unsat")
    checks.check("census", inst.graph.edge_count == 29 * f.m and inst.graph.vertex_count == 21 * f.m + 2 * f.n)
    verdict = decide_ip(inst.graph, inst.target, _budget(args))
    rep("solver", verdict.answer.value)
    rep("nodes", verdict.nodes_explored)
    if verdict.answer is Answer.UNKNOWN:
        checks.unknown("agreement", "search budget exhausted")
    else:
        checks.check("agreement", verdict.yes == (oracle is not None))
    if oracle is not None:

        def forward():
            part = assignment_to_partition(f, inst, oracle)
            return compare(score_of_collection(inst.graph, part), inst.target)

        order = checks.guard("forward-witness", forward)
        if order is not None:
            checks.check("forward-witness", order is not Ordering.LESS, f"score {order.name.lower()} target")
    if verdict.yes:
        a = checks.guard("backward-witness", lambda: partition_to_assignment(f, inst, verdict.witness))
        if a is not None:
            checks.check("backward-witness", f.evaluate(a) is None, "assignment " + "".join("1" if v else "0" for v in a.values))


def _verify_setcover(sc, k: int, args, rep: Report, checks: _Checks, tag: str = "") -> bool | None:
    oracle = brute_force_set_cover(sc)
    inst = setcover_to_kip(sc, k)
    rep(f"{tag}oracle", "cover" if oracle is not None else "no-cover")
    verdict = decide_kip(inst.graph, k, inst.target, _budget(args))
    rep(f"{tag}solver", verdict.answer.value)
    rep(f"{tag}nodes", verdict.nodes_explored)
    if verdict.answer is Answer.UNKNOWN:
        checks.unknown(f"{tag}agreement", "search budget exhausted")
    else:
        checks.check(f"{tag}agreement", verdict.yes == (oracle is not None))
    if oracle is not None:

        def forward():
            pc = cover_to_kpaths(sc, inst, oracle)
            validate_collection(inst.graph, pc)
            if any(len(p.edges) != k for p in pc.paths):
                raise ValidationError("forward packing contains a path of the wrong length")
            return compare(score_of_collection(inst.graph, pc), inst.target)

        order = checks.guard(f"{tag}forward-witness", forward)
        if order is not None:
            checks.check(f"{tag}forward-witness", order is not Ordering.LESS, f"score {order.name.lower()} target")
    if verdict.yes:
        cover = checks.guard(f"{tag}backward-witness", lambda: kpaths_to_cover(sc, inst, verdict.witness))
        if cover is not None:
            ok = sc.is_cover(cover) and len(cover) <= sc.tau
            checks.check(f"{tag}backward-witness", ok, "cover " + " ".join(map(str, sorted(cover))))
    return None if verdict.answer is Answer.UNKNOWN else verdict.yes


def _verify_cubic(args, rep: Report, checks: _Checks) -> None:
    g = parse_cubic(_read(args.source))
    k = 3 if args.k is None else args.k
    rep("graph-vertices", g.vertex_count)
    rep("graph-edges", len(g.edges))
    rep("k", k)
    taus = [args.tau] if args.tau is not None else list(range(1, g.vertex_count + 1))
    for tau in taus:
        tag = f"tau={tau} "
        vc = brute_force_vertex_cover(g, tau)
        sc = cubic_vc_to_setcover(g, tau)
        rep(f"{tag}vertex-cover", "yes" if vc is not None else "no")
        sc_cover = brute_force_set_cover(sc)
        checks.check(f"{tag}vc-vs-setcover", (vc is not None) == (sc_cover is not None))
        if vc is not None:
            checks.check(f"{tag}vc-translation", sc.is_cover(vertex_cover_to_set_cover(vc)))
        _verify_setcover(sc, k, args, rep, checks, tag)


def cmd_verify(args, rep: Report) -> int:
    rep("command", "verify")
    rep("kind", args.kind)
    checks = _Checks(rep)
    if args.kind == "cnf":
        _verify_cnf(args, rep, checks)
    elif args.kind == "setcover":
        sc = parse_setcover(_read(args.source))
        k = 3 if args.k is None else args.k
        if args.tau is not None:
            sc = type(sc)(sc.n, sc.sets, args.tau)
        rep("elements", sc.n)
        rep("sets", sc.m)
        rep("tau", sc.tau)
        rep("k", k)
        _verify_setcover(sc, k, args, rep, checks)
    else:
        _verify_cubic(args, rep, checks)
    return checks.finish()


# --- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-nodes", type=int, default=None, metavar="N", help="search-node limit")
    common.add_argument("--budget-seconds", type=float, default=None, metavar="S", help="wall-clock limit")
    common.add_argument("--decimal-digits", type=int, default=0, metavar="D", help="also print scores in bits to D significant digits")
    common.add_argument("--deterministic", action="store_true", help="accepted for compatibility; solvers are always deterministic")
    common.add_argument("--k", type=int, default=None, metavar="K", help="path length for k-IP")

    parser = _Parser(prog="ipaths", description="Interestingness-path solvers and hardness reductions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-ip", parents=[common], help="3-CNF (DIMACS) to IP instance")
    p.add_argument("cnf")
    p.add_argument("out")
    p.set_defaults(func=cmd_gen_ip)

    p = sub.add_parser("gen-kip", parents=[common], help="(3,2)-set-cover to k-IP instance")
    p.add_argument("setcover")
    p.add_argument("out")
    p.set_defaults(func=cmd_gen_kip)

    p = sub.add_parser("gen-setcover", parents=[common], help="cubic-graph vertex cover to (3,2)-set-cover")
    p.add_argument("cubic")
    p.add_argument("out")
    p.add_argument("--tau", type=int, required=True)
    p.set_defaults(func=cmd_gen_setcover)

    p = sub.add_parser("solve", parents=[common], help="solve or decide an instance")
    p.add_argument("instance")
    p.add_argument("--problem", choices=["max-ip", "ip", "kip"])
    p.add_argument("--mode", choices=["exact", "greedy"])
    p.add_argument("--witness-out", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="certify a reduction end to end on one source instance")
    p.add_argument("source")
    p.add_argument("--kind", choices=["cnf", "setcover", "cubic"], required=True)
    p.add_argument("--tau", type=int, default=None, help="cover bound (cubic: every tau when omitted)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("score", parents=[common], help="validate and score a witness")
    p.add_argument("instance")
    p.add_argument("witness")
    p.add_argument("--problem", choices=["max-ip", "ip", "kip"])
    p.set_defaults(func=cmd_score)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Report(out or sys.stdout)
    try:
        return args.func(args, rep)
    except UsageError as exc:
        print(f"ipaths: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"ipaths: error: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except OracleLimitError as exc:
        print(f"ipaths: oracle limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, ValidationError, CycleError) as exc:
        print(f"ipaths: invalid input: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
