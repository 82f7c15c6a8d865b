"""Colored covers of white-grey trees: costing, validation and optimal construction."""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .balance import UnrootedTree, find_balanced_linear, pair_through
from .errors import CoverError, InternalConstructionFailure
from .model import (
    CaseAnalysis,
    CaseTag,
    Color,
    DerivedSubtree,
    WhiteGreyTree,
    bounds,
    ceil_half,
    classify,
    induced_subtree,
    short_leaf_links,
    short_leaves,
)


class PathKind(enum.Enum):
    SHORT = "Short"
    GREY = "GreyPath"
    LONG = "Long"

    def __str__(self) -> str:
        return self.value


_KIND_COST = {PathKind.SHORT: 1, PathKind.GREY: 1, PathKind.LONG: 2}


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]
    kind: PathKind

    @property
    def cost(self) -> int:
        return _KIND_COST[self.kind]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]


@dataclass(frozen=True)
class Cover:
    paths: tuple[Path, ...]

    @property
    def total_cost(self) -> int:
        return sum(p.cost for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class CostReport:
    total: int
    case: CaseAnalysis
    cost_tw: int
    grey_term: int

    @property
    def bounds(self) -> tuple[int, int]:
        s = self.case.stats
        lower = s.w + ceil_half(s.g)
        return lower, lower + 1


def path_kind(t: WhiteGreyTree, vertices: Sequence[int]) -> PathKind:
    if len(vertices) == 1:
        return PathKind.SHORT
    if t.color[vertices[0]] is Color.GREY and t.color[vertices[-1]] is Color.GREY:
        return PathKind.GREY
    return PathKind.LONG


def make_path(t: WhiteGreyTree, vertices: Sequence[int]) -> Path:
    return Path(tuple(vertices), path_kind(t, vertices))


def path_cost(t: WhiteGreyTree, a: int, b: int) -> Path:
    """The tree path between two colored vertices, with its kind and cost."""
    bad = [v for v in {a, b} if not t.is_colored(v)]
    if bad:
        raise CoverError("UncoloredEndpoint", sorted(bad))
    return make_path(t, t.path(a, b))


def validate_cover(t: WhiteGreyTree, cover: Cover | Iterable[Path]) -> int:
    """Total cost of ``cover`` after checking it is a colored cover of ``t``."""
    paths = cover.paths if isinstance(cover, Cover) else tuple(cover)
    covered: set[int] = set()
    for p in paths:
        vs = p.vertices
        if (
            not vs
            or any(not 0 <= v < t.n for v in vs)
            or len(set(vs)) != len(vs)
            or any(b not in t.neighbors(a) for a, b in zip(vs, vs[1:]))
        ):
            raise CoverError("NotAPath", list(vs))
        ends = [v for v in (vs[0], vs[-1]) if not t.is_colored(v)]
        if ends:
            raise CoverError("UncoloredEndpoint", ends)
        if p.kind is not path_kind(t, vs):
            raise CoverError("NotAPath", list(vs))
        covered.update(vs)
    missing = [v for v in t.colored_vertices() if v not in covered]
    if missing:
        raise CoverError("UncoveredVertex", missing)
    return sum(p.cost for p in paths)


def white_cost(tw: DerivedSubtree) -> int:
    """Optimal cover cost of a tree with at most one grey leaf: the leaf count,
    plus one when that count is odd and no leaf is short."""
    if tw.tree is None:
        return 0
    if tw.tree.n == 1:
        return 1
    n_leaves = len(tw.tree.leaves())
    if n_leaves % 2 == 1 and not short_leaves(tw.tree):
        return n_leaves + 1
    return n_leaves


def _pair_cover(tree: WhiteGreyTree, vertices: Iterable[int]) -> list[list[int]]:
    """Leaf-to-leaf paths through a balanced vertex of the subtree on ``vertices``."""
    local = sorted(vertices)
    if len(local) == 1:
        return [local]
    index = {v: i for i, v in enumerate(local)}
    edges = [(index[tree.parent[v]], index[v]) for v in local if tree.parent[v] in index]
    sub = UnrootedTree.from_edges(len(local), edges)
    hub = find_balanced_linear(sub)
    pairing = pair_through(sub, hub)
    return [[local[x] for x in sub.path(a, b)] for a, b in pairing.pairs]


def _half_path(tree: WhiteGreyTree, leaf: int) -> tuple[list[int], list[int]]:
    """Walk from ``leaf`` through degree-two vertices up to the first branching vertex.

    Returns the half path (ending at the last colored vertex of the walk) and every
    vertex walked, which is what gets removed from the tree.
    """
    chain = [leaf]
    prev, cur = leaf, tree.neighbors(leaf)[0]
    while tree.degree(cur) == 2:
        chain.append(cur)
        prev, cur = cur, next(u for u in tree.neighbors(cur) if u != prev)
    last = max(i for i, v in enumerate(chain) if tree.is_colored(v))
    return chain[: last + 1], chain


def white_cover(tw: DerivedSubtree) -> Cover:
    """Cover a tree whose leaves are colored, at the cost :func:`white_cost` predicts.

    Even leaf count: pair leaves through a balanced vertex.  Odd with a short
    leaf: a short path on the smallest such leaf, then pair the rest.  Odd
    without: a half path from the smallest leaf, then pair the rest.  Paths use
    the subtree's own ids.
    """
    tree = tw.tree
    if tree is None:
        return Cover(())
    if tree.n == 1:
        return Cover((make_path(tree, [0]),))
    everything = set(range(tree.n))
    leaves = tree.leaves()
    if len(leaves) % 2 == 0:
        seqs = _pair_cover(tree, everything)
    else:
        short = short_leaf_links(tree)
        if short:
            first = min(short)
            seqs = [[first]] + _pair_cover(tree, everything - {first, *short[first]})
        else:
            half, walked = _half_path(tree, min(leaves))
            seqs = [half] + _pair_cover(tree, everything - set(walked))
    return Cover(tuple(make_path(tree, s) for s in seqs))


_FORMULA = {
    CaseTag.NO_DANGER_ODD_NO_SHORT: lambda w, g: w + 1 + ceil_half(g - 1),
    CaseTag.NO_DANGER_OTHERWISE: lambda w, g: w + ceil_half(g),
    CaseTag.DANGER_ODD_NO_SHORT: lambda w, g: (w + 1) + 1 + max(0, ceil_half(g - 2)),
    CaseTag.DANGER_ODD_ONE_WHITE_DANGEROUS_SHORT: lambda w, g: (w + 1) + ceil_half(g),
    CaseTag.DANGER_OTHERWISE: lambda w, g: (w + 1) + ceil_half(g - 1),
}


def cost(t: WhiteGreyTree) -> CostReport:
    """Optimal colored cover cost by the closed-form case analysis."""
    case = classify(t)
    w, g = case.stats.w, case.stats.g
    total = _FORMULA[case.case_tag](w, g)
    return CostReport(
        total=total,
        case=case,
        cost_tw=white_cost(case.tw),
        grey_term=max(0, ceil_half(g - case.f)),
    )


def trace(t: WhiteGreyTree, tw: DerivedSubtree, p: Path) -> Path | None:
    """Restriction of ``p`` to ``tw`` with uncolored vertices stripped from both ends.

    The result is expressed in ``tw`` ids, or ``None`` when nothing is left.
    """
    if tw.tree is None:
        return None
    inside = [tw.from_original[v] for v in p.vertices if v in tw.from_original]
    while inside and not tw.tree.is_colored(inside[0]):
        inside.pop(0)
    while inside and not tw.tree.is_colored(inside[-1]):
        inside.pop()
    if not inside:
        return None
    return make_path(tw.tree, inside)


def trace_cover(t: WhiteGreyTree, tw: DerivedSubtree, c: Cover) -> Cover:
    traced = (trace(t, tw, p) for p in c.paths)
    return Cover(tuple(p for p in traced if p is not None))


def mixed_paths(t: WhiteGreyTree, c: Cover) -> list[Path]:
    """Paths with at least two colored vertices, exactly one of them a grey leaf."""
    out = []
    for p in c.paths:
        colored = [v for v in p.vertices if t.is_colored(v)]
        greys = sum(1 for v in colored if t.color[v] is Color.GREY and t.is_leaf(v))
        if len(colored) >= 2 and greys == 1:
            out.append(p)
    return out


def build_cover(t: WhiteGreyTree) -> Cover:
    """An optimal colored cover with at most two mixed paths.

    The white part is covered together with the grey leaves it can absorb for
    free: those grey leaves are added to the white subtree through the root and
    the result is covered as one tree.  A grey dangerous top that must be covered
    on its own is joined to a grey leaf instead.  Remaining grey leaves are paired
    through the root, with a short path on the largest leftover.
    """
    report = cost(t)
    case = report.case
    tw = case.tw
    greys = sorted(t.grey_leaves())
    seqs: list[list[int]] = []

    grey_top_alone = (
        case.case_tag is CaseTag.DANGER_OTHERWISE
        and case.tw_leaves % 2 == 1
        and 0 in case.short_leaves_tw
        and t.color[tw.to_original[0]] is Color.GREY
    )
    if grey_top_alone:
        top = tw.to_original[0]
        for p in white_cover(tw).paths:
            seq = [tw.to_original[v] for v in p.vertices]
            if seq == [top] and greys:
                seq = t.path(top, greys.pop(0))
            seqs.append(seq)
    else:
        absorbed = greys[: min(case.f, len(greys))]
        greys = greys[len(absorbed) :]
        base = tw
        if absorbed:
            base = induced_subtree(t, set(tw.to_original) | {t.root} | set(absorbed))
        for p in white_cover(base).paths:
            seqs.append([base.to_original[v] for v in p.vertices])

    if len(greys) % 2:
        seqs.append([greys.pop()])
    seqs.extend(t.path(a, b) for a, b in zip(greys[::2], greys[1::2]))

    result = Cover(tuple(make_path(t, s) for s in seqs))
    try:
        total = validate_cover(t, result)
    except CoverError as exc:
        raise InternalConstructionFailure(f"constructed cover is invalid: {exc}") from exc
    if total != report.total:
        raise InternalConstructionFailure(f"constructed cover costs {total}, expected {report.total}")
    if len(mixed_paths(t, result)) > 2:
        raise InternalConstructionFailure("constructed cover has more than two mixed paths")
    return result


__all__ = [
    "Cover",
    "CostReport",
    "Path",
    "PathKind",
    "bounds",
    "build_cover",
    "cost",
    "make_path",
    "mixed_paths",
    "path_cost",
    "trace",
    "trace_cover",
    "validate_cover",
    "white_cost",
    "white_cover",
]
