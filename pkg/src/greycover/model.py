"""White-grey trees: construction, validation and the statistics the cost formula needs.

A white-grey tree is rooted at an uncolored vertex.  Grey vertices hang directly
off the root (as leaves or as tops of subtrees), every other leaf is white, and an
uncolored vertex other than the root always branches.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import TreeValidationError, Violation


class Color(enum.Enum):
    UNCOLORED = "u"
    WHITE = "w"
    GREY = "g"

    @classmethod
    def from_char(cls, ch: str) -> "Color":
        return cls(ch)

    @property
    def colored(self) -> bool:
        return self is not Color.UNCOLORED


@dataclass(frozen=True, eq=False)
class WhiteGreyTree:
    """Rooted tree with per-vertex colors.

    Instances made by :func:`build` are validated.  The same class also carries
    derived trees (``T_w`` and friends) which are not required to obey the
    white-grey rules, e.g. their top vertex may be colored.
    """

    parent: tuple[int | None, ...]
    children: tuple[tuple[int, ...], ...]
    color: tuple[Color, ...]
    root: int

    @property
    def n(self) -> int:
        return len(self.color)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WhiteGreyTree):
            return NotImplemented
        return (self.parent, self.children, self.color, self.root) == (
            other.parent,
            other.children,
            other.color,
            other.root,
        )

    def __hash__(self) -> int:
        return hash((self.parent, self.children, self.color, self.root))

    def neighbors(self, v: int) -> tuple[int, ...]:
        p = self.parent[v]
        return self.children[v] if p is None else (p,) + self.children[v]

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (self.parent[v] is not None)

    def is_leaf(self, v: int) -> bool:
        return self.degree(v) <= 1

    def is_colored(self, v: int) -> bool:
        return self.color[v] is not Color.UNCOLORED

    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.is_leaf(v)]

    def colored_vertices(self) -> list[int]:
        return [v for v in range(self.n) if self.is_colored(v)]

    def grey_leaves(self) -> list[int]:
        return [v for v in range(self.n) if self.color[v] is Color.GREY and self.is_leaf(v)]

    def preorder(self) -> list[int]:
        order: list[int] = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order

    @cached_property
    def depth(self) -> tuple[int, ...]:
        depth = [0] * self.n
        for v in self.preorder():
            p = self.parent[v]
            if p is not None:
                depth[v] = depth[p] + 1
        return tuple(depth)

    def path(self, a: int, b: int) -> list[int]:
        """Vertices of the unique a-b path, in order from a to b."""
        depth = self.depth
        up_a, up_b = [a], [b]
        while depth[up_a[-1]] > depth[up_b[-1]]:
            up_a.append(self.parent[up_a[-1]])  # type: ignore[arg-type]
        while depth[up_b[-1]] > depth[up_a[-1]]:
            up_b.append(self.parent[up_b[-1]])  # type: ignore[arg-type]
        while up_a[-1] != up_b[-1]:
            up_a.append(self.parent[up_a[-1]])  # type: ignore[arg-type]
            up_b.append(self.parent[up_b[-1]])  # type: ignore[arg-type]
        up_b.pop()
        return up_a + up_b[::-1]


def _make_tree(parent: Sequence[int | None], colors: Sequence[Color], root: int) -> WhiteGreyTree:
    children: list[list[int]] = [[] for _ in colors]
    for v, p in enumerate(parent):
        if p is not None:
            children[p].append(v)
    return WhiteGreyTree(tuple(parent), tuple(map(tuple, children)), tuple(colors), root)


def _coerce_colors(colors: Iterable[Color | str]) -> list[Color]:
    return [c if isinstance(c, Color) else Color.from_char(c) for c in colors]


def build(edges: Iterable[tuple[int, int]], colors: Iterable[Color | str]) -> WhiteGreyTree:
    """Build and validate a white-grey tree from ``(parent, child)`` pairs.

    Children keep the order in which their edges are listed.  Raises
    :class:`TreeValidationError` carrying every violation found.
    """
    cols = _coerce_colors(colors)
    n = len(cols)
    edges = list(edges)
    parent: list[int | None] = [None] * n
    children: list[list[int]] = [[] for _ in range(n)]
    if n == 0 or len(edges) != n - 1:
        raise TreeValidationError([Violation("NotATree")])
    for p, c in edges:
        if not (0 <= p < n and 0 <= c < n) or p == c or parent[c] is not None:
            raise TreeValidationError([Violation("NotATree", c if 0 <= c < n else None)])
        parent[c] = p
        children[p].append(c)
    roots = [v for v in range(n) if parent[v] is None]
    if len(roots) != 1:
        raise TreeValidationError([Violation("NotATree")])
    root = roots[0]
    seen = 0
    stack = [root]
    while stack:
        v = stack.pop()
        seen += 1
        stack.extend(children[v])
        if seen > n:
            break
    if seen != n:
        raise TreeValidationError([Violation("NotATree")])

    tree = WhiteGreyTree(tuple(parent), tuple(map(tuple, children)), tuple(cols), root)
    violations = _color_violations(tree)
    if violations:
        raise TreeValidationError(violations)
    return tree


def _color_violations(t: WhiteGreyTree) -> list[Violation]:
    out: list[Violation] = []
    if t.color[t.root] is not Color.UNCOLORED:
        out.append(Violation("RootColored", t.root))
    for v in range(t.n):
        if v == t.root:
            continue
        col = t.color[v]
        at_root = t.parent[v] == t.root
        if col is Color.UNCOLORED and t.degree(v) < 3:
            out.append(Violation("UncoloredNonBranching", v))
        if col is Color.GREY and not at_root:
            out.append(Violation("GreyNotRootChild", v))
        if not t.children[v]:
            if at_root and col is Color.WHITE:
                out.append(Violation("WhiteLeafAtRoot", v))
            elif not at_root and col is Color.GREY:
                out.append(Violation("NonRootLeafNotWhite", v))
    return out


def validate(t: WhiteGreyTree) -> WhiteGreyTree:
    """Re-run :func:`build` validation on an existing tree."""
    edges = [(p, v) for v in t.preorder() if (p := t.parent[v]) is not None]
    return build(edges, t.color)


@dataclass(frozen=True)
class TreeStats:
    w: int
    g: int
    colored: int


def stats(t: WhiteGreyTree) -> TreeStats:
    w = g = colored = 0
    for v in range(t.n):
        col = t.color[v]
        if col is Color.UNCOLORED:
            continue
        colored += 1
        if t.is_leaf(v) and v != t.root:
            if col is Color.WHITE:
                w += 1
            else:
                g += 1
    return TreeStats(w, g, colored)


def ceil_half(x: int) -> int:
    # exact ceiling for negative numerators too: ceil(-1/2) == 0
    return -((-x) // 2)


def bounds(t: WhiteGreyTree) -> tuple[int, int]:
    s = stats(t)
    lower = s.w + ceil_half(s.g)
    return lower, lower + 1


@dataclass(frozen=True)
class DerivedSubtree:
    """A connected piece of a source tree, relabelled in pre-order from its top.

    ``tree`` is ``None`` for the empty subtree.  ``to_original[i]`` is the source
    id of subtree vertex ``i``.
    """

    tree: WhiteGreyTree | None
    to_original: tuple[int, ...]
    removed_root: bool

    @cached_property
    def from_original(self) -> dict[int, int]:
        return {o: i for i, o in enumerate(self.to_original)}

    @property
    def empty(self) -> bool:
        return self.tree is None

    def leaves(self) -> list[int]:
        return [] if self.tree is None else self.tree.leaves()


def induced_subtree(t: WhiteGreyTree, keep: set[int]) -> DerivedSubtree:
    """Restrict ``t`` to the connected vertex set ``keep``."""
    if not keep:
        return DerivedSubtree(None, (), t.root not in keep)
    order = [v for v in t.preorder() if v in keep]
    top = order[0]
    index = {v: i for i, v in enumerate(order)}
    parent: list[int | None] = []
    for v in order:
        p = t.parent[v]
        if v == top:
            parent.append(None)
        elif p is None or p not in keep:
            raise ValueError("kept vertex set is not connected")
        else:
            parent.append(index[p])
    tree = _make_tree(parent, [t.color[v] for v in order], 0)
    return DerivedSubtree(tree, tuple(order), t.root not in keep)


def derive_white_subtree(t: WhiteGreyTree) -> DerivedSubtree:
    """Drop grey leaves, and the root too if it would be left with degree at most one."""
    grey_leaves = set(t.grey_leaves())
    keep = {v for v in range(t.n) if v not in grey_leaves}
    remaining = sum(1 for c in t.children[t.root] if c not in grey_leaves)
    if remaining <= 1:
        keep.discard(t.root)
    return induced_subtree(t, keep)


def short_leaf_links(t: WhiteGreyTree | None) -> dict[int, list[int]]:
    """Short leaves, each mapped to the uncolored degree-two vertices between it
    and its branching neighbor.

    A leaf is short when it is adjacent to a vertex of degree at least three.
    Uncolored degree-two vertices (a pruned root, or an uncolored top that lost
    the root edge) never need covering, so they are looked through.
    """
    if t is None or t.n < 2:
        return {}
    out = {}
    for leaf in t.leaves():
        skipped: list[int] = []
        prev, cur = leaf, t.neighbors(leaf)[0]
        while t.degree(cur) == 2 and not t.is_colored(cur):
            skipped.append(cur)
            prev, cur = cur, next(u for u in t.neighbors(cur) if u != prev)
        if t.degree(cur) >= 3:
            out[leaf] = skipped
    return out


def short_leaves(t: WhiteGreyTree | None) -> list[int]:
    return sorted(short_leaf_links(t))


def dangerous_vertices(t: WhiteGreyTree) -> list[int]:
    """Colored vertices strictly between the root and the first branching vertex.

    Only defined when exactly one child of the root is not a grey leaf; empty
    otherwise.  If that child's subtree is a bare chain, every chain vertex but the
    bottom leaf is dangerous.
    """
    tops = [c for c in t.children[t.root] if not (t.color[c] is Color.GREY and t.is_leaf(c))]
    if len(tops) != 1:
        return []
    chain = []
    v = tops[0]
    while len(t.children[v]) == 1:
        chain.append(v)
        v = t.children[v][0]
    return chain


class CaseTag(enum.Enum):
    NO_DANGER_ODD_NO_SHORT = "NoDanger_OddNoShort"
    NO_DANGER_OTHERWISE = "NoDanger_Otherwise"
    DANGER_ODD_NO_SHORT = "Danger_OddNoShort"
    DANGER_ODD_ONE_WHITE_DANGEROUS_SHORT = "Danger_OddOneWhiteDangerousShort"
    DANGER_OTHERWISE = "Danger_Otherwise"

    def __str__(self) -> str:
        return self.value


FREE_PATHS = {
    CaseTag.NO_DANGER_ODD_NO_SHORT: 1,
    CaseTag.NO_DANGER_OTHERWISE: 0,
    CaseTag.DANGER_ODD_NO_SHORT: 2,
    CaseTag.DANGER_ODD_ONE_WHITE_DANGEROUS_SHORT: 0,
    CaseTag.DANGER_OTHERWISE: 1,
}


@dataclass(frozen=True)
class CaseAnalysis:
    stats: TreeStats
    tw: DerivedSubtree
    tw_leaves: int
    short_leaves_tw: frozenset[int]
    dangerous: frozenset[int]
    case_tag: CaseTag
    f: int


def classify(t: WhiteGreyTree) -> CaseAnalysis:
    s = stats(t)
    tw = derive_white_subtree(t)
    n_leaves = len(tw.leaves())
    short = short_leaves(tw.tree)
    dangerous = dangerous_vertices(t)
    if not dangerous:
        if s.w % 2 == 1 and not short:
            tag = CaseTag.NO_DANGER_ODD_NO_SHORT
        else:
            tag = CaseTag.NO_DANGER_OTHERWISE
    else:
        odd = (s.w + 1) % 2 == 1
        if odd and not short:
            tag = CaseTag.DANGER_ODD_NO_SHORT
        elif (
            odd
            and len(short) == 1
            and tw.to_original[short[0]] in dangerous
            and t.color[tw.to_original[short[0]]] is Color.WHITE
        ):
            tag = CaseTag.DANGER_ODD_ONE_WHITE_DANGEROUS_SHORT
        else:
            tag = CaseTag.DANGER_OTHERWISE
    return CaseAnalysis(
        stats=s,
        tw=tw,
        tw_leaves=n_leaves,
        short_leaves_tw=frozenset(short),
        dangerous=frozenset(dangerous),
        case_tag=tag,
        f=FREE_PATHS[tag],
    )
