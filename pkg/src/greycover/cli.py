"""Command-line front end.

Exit codes: 0 success, 1 parse or validation error, 2 property violation,
3 oracle size limit.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .balance import (
    all_balanced,
    antipodal_pairing,
    find_balanced_linear,
    pair_through,
)
from .checks import tree_problems, unrooted_problems
from .cover import build_cover, cost, mixed_paths
from .errors import GreyCoverError, NoEvenLeavesError, NotBalancedError, OracleTooLarge
from .model import bounds, stats
from .oracle import GenParams, OracleLimit, enumerate_trees, exact_cost, random_tree, random_unrooted
from .treetext import parse_tree, parse_unrooted, serialize_tree, serialize_unrooted

EXIT_OK, EXIT_INPUT, EXIT_PROPERTY, EXIT_TOO_LARGE = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    input_digest: str | None
    results: dict[str, Any] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    summary: str = ""

    def as_json(self) -> str:
        return json.dumps(
            {
                "command": self.command,
                "input_sha256": self.input_digest,
                "results": self.results,
                "exit_code": self.exit_code,
            },
            sort_keys=True,
        )


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def _fail(report: RunReport, code: int, message: str) -> RunReport:
    report.exit_code = code
    report.results["error"] = message
    report.summary = f"{report.command} error: {message}"
    return report


def _paths_json(cover) -> list[dict[str, Any]]:
    return [{"vertices": list(p.vertices), "kind": str(p.kind), "cost": p.cost} for p in cover.paths]


# -- single-tree commands --------------------------------------------------


def _cmd_validate(text: str, args, report: RunReport) -> RunReport:
    t = parse_tree(text)
    report.results = {"valid": True, "vertices": t.n, "tree": serialize_tree(t)}
    report.summary = f"valid vertices={t.n}"
    return report


def _cmd_stats(text: str, args, report: RunReport) -> RunReport:
    s = stats(parse_tree(text))
    report.results = {"w": s.w, "g": s.g, "colored": s.colored}
    report.summary = f"w={s.w} g={s.g} colored={s.colored}"
    return report


def _cost_results(t) -> dict[str, Any]:
    r = cost(t)
    lo, hi = bounds(t)
    return {
        "total": r.total,
        "case": str(r.case.case_tag),
        "f": r.case.f,
        "cost_tw": r.cost_tw,
        "grey_term": r.grey_term,
        "w": r.case.stats.w,
        "g": r.case.stats.g,
        "dangerous": sorted(r.case.dangerous),
        "bounds": [lo, hi],
    }


def _cmd_cost(text: str, args, report: RunReport) -> RunReport:
    res = _cost_results(parse_tree(text))
    report.results = res
    report.summary = (
        f"total={res['total']} case={res['case']} f={res['f']} cost_tw={res['cost_tw']} "
        f"bounds=[{res['bounds'][0]},{res['bounds'][1]}]"
    )
    return report


def _cmd_cover(text: str, args, report: RunReport) -> RunReport:
    t = parse_tree(text)
    c = build_cover(t)
    n_mixed = len(mixed_paths(t, c))
    report.results = {"paths": _paths_json(c), "total": c.total_cost, "mixed": n_mixed}
    lines = [f"{str(p.kind):8} cost={p.cost} {' '.join(map(str, p.vertices))}" for p in c.paths]
    report.summary = "\n".join(lines + [f"total={c.total_cost} mixed={n_mixed}"])
    return report


def _cmd_balanced(text: str, args, report: RunReport) -> RunReport:
    u = parse_unrooted(text)
    if u.n < 2:
        return _fail(report, EXIT_INPUT, "balance needs at least two vertices")
    balanced = sorted(all_balanced(u))
    try:
        pick: int | None = find_balanced_linear(u)
    except NoEvenLeavesError:
        pick = None
    report.results = {"balanced": balanced, "linear": pick, "leaves": u.leaf_count}
    report.summary = f"balanced={' '.join(map(str, balanced))} linear={'-' if pick is None else pick}"
    return report


def _cmd_pair(text: str, args, report: RunReport) -> RunReport:
    u = parse_unrooted(text)
    try:
        if args.mode == "antipodal":
            pairing = antipodal_pairing(u)
        else:
            hub = find_balanced_linear(u) if args.vertex is None else args.vertex
            pairing = pair_through(u, hub)
    except (NoEvenLeavesError, NotBalancedError) as exc:
        return _fail(report, EXIT_INPUT, str(exc))
    report.results = {"pairs": [list(p) for p in pairing.pairs], "hub": pairing.hub, "mode": args.mode}
    pairs = " ".join(f"{a}-{b}" for a, b in pairing.pairs)
    report.summary = f"hub={pairing.hub} pairs={pairs}"
    return report


def _cmd_oracle(text: str, args, report: RunReport) -> RunReport:
    t = parse_tree(text)
    exact, witness = exact_cost(t, OracleLimit(max_colored=args.max_colored))
    report.results = {"exact": exact, "witness": _paths_json(witness)}
    report.summary = f"exact={exact}"
    if args.check:
        formula = cost(t).total
        report.results["formula"] = formula
        report.results["agree"] = formula == exact
        report.summary += f" formula={formula} {'agree' if formula == exact else 'DISAGREE'}"
        if formula != exact:
            report.exit_code = EXIT_PROPERTY
            report.results["counterexample"] = serialize_tree(t)
    return report


SINGLE = {
    "validate": _cmd_validate,
    "stats": _cmd_stats,
    "cost": _cmd_cost,
    "cover": _cmd_cover,
    "balanced": _cmd_balanced,
    "pair": _cmd_pair,
    "oracle": _cmd_oracle,
}


def run_single(command: str, text: str, args) -> RunReport:
    report = RunReport(command, _digest(text))
    try:
        return SINGLE[command](text, args, report)
    except OracleTooLarge as exc:
        return _fail(report, EXIT_TOO_LARGE, str(exc))
    except GreyCoverError as exc:
        return _fail(report, EXIT_INPUT, str(exc))


# -- generator-driven commands ---------------------------------------------


def _trial(job: tuple[int, int, int, int]) -> tuple[int, list[str], str]:
    seed, index, max_vertices, max_colored = job
    trial_seed = seed * 1_000_003 + index
    t = random_tree(GenParams(trial_seed, max_vertices=max_vertices, max_colored=max_colored))
    problems = tree_problems(t, OracleLimit(max_colored=max_colored))
    if not problems:
        rng = random.Random(trial_seed)
        u = random_unrooted(trial_seed, 2 * rng.randint(1, 20))
        unrooted = unrooted_problems(u, seed=trial_seed)
        if unrooted:
            return index, unrooted, serialize_unrooted(u)
    return index, problems, serialize_tree(t)


def cmd_fuzz(args) -> RunReport:
    report = RunReport("fuzz", None)
    jobs = [(args.seed, i, args.max_vertices, args.max_colored) for i in range(args.trials)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            outcomes = list(pool.map(_trial, jobs, chunksize=16))
    else:
        outcomes = [_trial(j) for j in jobs]
    failures = [(i, probs, text) for i, probs, text in outcomes if probs]
    passed = args.trials - len(failures)
    report.results = {"seed": args.seed, "trials": args.trials, "passed": passed}
    report.summary = f"fuzz seed={args.seed} {passed}/{args.trials} pass"
    if failures:
        i, probs, text = failures[0]
        report.exit_code = EXIT_PROPERTY
        report.results["first_failure"] = {"trial": i, "problems": probs, "tree": text}
        report.summary += f"\nfirst counterexample (trial {i}): {text}\n" + "\n".join(probs)
    return report


def cmd_bench(args) -> RunReport:
    report = RunReport("bench", None)
    u = random_unrooted(args.seed, args.leaves)
    times = []
    for _ in range(args.repeat):
        start = time.perf_counter()
        v = find_balanced_linear(u)
        times.append(time.perf_counter() - start)
    best = min(times)
    report.results = {"leaves": args.leaves, "vertices": u.n, "seconds": best, "vertex": v}
    report.summary = f"leaves={args.leaves} vertices={u.n} best={best:.4f}s vertex={v}"
    return report


def cmd_gen(args, out) -> RunReport:
    report = RunReport("gen", None)
    count = 0
    if args.exhaustive is not None:
        for t in enumerate_trees(args.exhaustive):
            out.write(serialize_tree(t) + "\n")
            count += 1
    elif args.unrooted_leaves is not None:
        for i in range(args.count):
            out.write(serialize_unrooted(random_unrooted(args.seed + i, args.unrooted_leaves)) + "\n")
            count += 1
    else:
        for i in range(args.count):
            p = GenParams(args.seed + i, max_vertices=args.max_vertices, max_colored=args.max_colored)
            out.write(serialize_tree(random_tree(p)) + "\n")
            count += 1
    report.results = {"count": count}
    report.summary = f"generated {count} trees"
    return report


# -- entry point -----------------------------------------------------------


def _default_seed() -> int:
    return int(os.environ.get("GREYCOVER_SEED", "0"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="greycover", description="Colored path covers of white-grey trees.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    def tree_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", nargs="?", default="-", help="tree file, '-' for stdin")
        p.add_argument("--batch", action="store_true", help="one tree per input line")
        return p

    tree_cmd("validate", "check the white-grey tree rules")
    tree_cmd("stats", "count white leaves, grey leaves and colored vertices")
    tree_cmd("cost", "optimal cover cost from the case analysis")
    tree_cmd("cover", "construct an optimal cover")
    tree_cmd("balanced", "balanced vertices of the tree, colors ignored")
    p = tree_cmd("pair", "leaf pairing through a common vertex")
    p.add_argument("--mode", choices=("through", "antipodal"), default="through")
    p.add_argument("--vertex", type=int, default=None, help="hub for --mode through")
    p = tree_cmd("oracle", "exact cost by exhaustive search")
    p.add_argument("--check", action="store_true", help="compare against the closed form")
    p.add_argument("--max-colored", type=int, default=16)

    p = sub.add_parser("fuzz", parents=[common], help="random property checks")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--max-colored", type=int, default=16)
    p.add_argument("--max-vertices", type=int, default=22)
    p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("bench", parents=[common], help="time the linear balanced-vertex finder")
    p.add_argument("--leaves", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)

    p = sub.add_parser("gen", parents=[common], help="write trees, one per line")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-vertices", type=int, default=20)
    p.add_argument("--max-colored", type=int, default=None)
    p.add_argument("--exhaustive", type=int, default=None, metavar="N", help="all trees up to N vertices")
    p.add_argument("--unrooted-leaves", type=int, default=None, metavar="L")
    return parser


def _emit(report: RunReport, fmt: str, out) -> None:
    if fmt == "json":
        out.write(report.as_json() + "\n")
    elif report.summary:
        out.write(report.summary + "\n")


def main(argv: list[str] | None = None, stdin=None, stdout=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)

    if args.command == "fuzz":
        if args.seed is None:
            args.seed = _default_seed()
        report = cmd_fuzz(args)
        _emit(report, args.format, stdout)
        return report.exit_code
    if args.command == "bench":
        report = cmd_bench(args)
        _emit(report, args.format, stdout)
        return report.exit_code
    if args.command == "gen":
        report = cmd_gen(args, stdout)
        if args.format == "json":
            _emit(report, "json", sys.stderr)
        return report.exit_code

    if args.input == "-":
        text = stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    inputs = [line for line in text.splitlines() if line.strip()] if args.batch else [text]
    worst = EXIT_OK
    for item in inputs:
        report = run_single(args.command, item, args)
        if args.batch and args.format == "text" and report.exit_code != EXIT_OK:
            report.summary = f"{item.strip()}: {report.summary}"
        if not args.batch or args.format == "json" or report.exit_code != EXIT_OK:
            _emit(report, args.format, stdout)
        worst = max(worst, report.exit_code)
    if args.batch and args.format == "text":
        stdout.write(f"{len(inputs)} trees, exit {worst}\n")
    return worst


if __name__ == "__main__":
    sys.exit(main())
