"""Property checks shared by the fuzz command.

Each function returns a list of human-readable problems; empty means the
instance passed.
"""

from __future__ import annotations

import random

from .balance import (
    UnrootedTree,
    all_balanced,
    antipodal_pairing,
    find_balanced_linear,
    find_balanced_walk,
    pair_through,
    pairing_problems,
)
from .cover import build_cover, cost, mixed_paths, trace_cover, validate_cover, white_cost, white_cover
from .errors import GreyCoverError
from .model import FREE_PATHS, Color, bounds, validate
from .oracle import OracleLimit, exact_cost
from .treetext import parse_tree, serialize_tree


def tree_problems(t, lim: OracleLimit = OracleLimit()) -> list[str]:
    problems = []
    text = serialize_tree(t)
    if parse_tree(text) != t:
        problems.append("parse/serialize round trip changed the tree")
    try:
        validate(t)
    except GreyCoverError as exc:
        problems.append(f"generated tree is invalid: {exc}")
        return problems
    for v in range(t.n):
        if t.color[v] is Color.GREY and t.parent[v] != t.root:
            problems.append(f"grey vertex {v} is not a root child")

    report = cost(t)
    case = report.case
    lo, hi = bounds(t)
    if case.f != FREE_PATHS[case.case_tag]:
        problems.append("free path count does not match case")
    if (case.case_tag.value.startswith("Danger_")) != bool(case.dangerous):
        problems.append("case tag disagrees with dangerous set")
    if not case.tw.empty:
        expected = case.stats.w + (1 if case.dangerous else 0)
        if case.tw_leaves != expected:
            problems.append(f"T_w has {case.tw_leaves} leaves, expected {expected}")
        if set(case.tw.to_original) & set(t.grey_leaves()):
            problems.append("T_w kept a grey leaf")
    if report.total != report.cost_tw + report.grey_term:
        problems.append("reduction identity fails")
    if not lo <= report.total <= hi:
        problems.append(f"formula cost {report.total} outside bounds [{lo}, {hi}]")

    if len(t.colored_vertices()) <= lim.max_colored:
        exact, witness = exact_cost(t, lim)
        if exact != report.total:
            problems.append(f"formula cost {report.total} != exact cost {exact}")
        if not lo <= exact <= hi:
            problems.append(f"exact cost {exact} outside bounds [{lo}, {hi}]")
        if validate_cover(t, witness) != exact:
            problems.append("oracle witness does not realize the exact cost")

    try:
        cover = build_cover(t)
    except GreyCoverError as exc:
        problems.append(f"build_cover failed: {exc}")
        return problems
    if len(mixed_paths(t, cover)) > 2:
        problems.append("more than two mixed paths")
    if not case.tw.empty:
        wc = white_cost(case.tw)
        if validate_cover(case.tw.tree, white_cover(case.tw)) != wc:
            problems.append("white cover does not reach the white cost")
        if validate_cover(case.tw.tree, trace_cover(t, case.tw, cover)) != wc:
            problems.append("trace of the built cover is not an optimal white cover")
    return problems


def unrooted_problems(u: UnrootedTree, walk_starts: int = 10, seed: int = 0) -> list[str]:
    problems = []
    balanced = all_balanced(u)
    pick = find_balanced_linear(u)
    if pick not in balanced:
        problems.append(f"linear finder returned unbalanced vertex {pick}")
    rng = random.Random(seed)
    for start in rng.sample(range(u.n), min(walk_starts, u.n)):
        walk = find_balanced_walk(u, start)
        if len(set(walk.visited)) != len(walk.visited) or walk.result not in balanced:
            problems.append(f"walk from {start} misbehaved")
    for name, pairing in (("through", pair_through(u, pick)), ("antipodal", antipodal_pairing(u))):
        problems.extend(f"{name}: {p}" for p in pairing_problems(u, pairing))
    return problems
