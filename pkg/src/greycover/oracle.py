"""Exact reference solvers and instance generators used to check the closed forms."""

from __future__ import annotations

import random
import sys
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache

from .balance import UnrootedTree
from .cover import Cover, make_path
from .errors import NoEvenLeavesError, OracleTooLarge
from .model import WhiteGreyTree, build
from .treetext import parse_tree


@dataclass(frozen=True)
class OracleLimit:
    max_colored: int = 16
    max_paths_expanded: int = 20_000_000

    def __post_init__(self) -> None:
        if self.max_colored <= 0 or self.max_paths_expanded <= 0:
            raise ValueError("oracle limits must be positive")


def exact_cost(t: WhiteGreyTree, lim: OracleLimit = OracleLimit()) -> tuple[int, Cover]:
    """Minimum colored cover cost by exhaustive search, with an optimal witness.

    Dynamic programming over the set of colored vertices covered so far.  The
    lowest uncovered colored vertex must lie on some path of the cover, so only
    candidate paths through it are tried.  Candidates are every single colored
    vertex and the tree path between every pair of colored vertices.
    """
    colored = t.colored_vertices()
    k = len(colored)
    if k > lim.max_colored:
        raise OracleTooLarge(f"{k} colored vertices exceed the oracle limit of {lim.max_colored}")
    if k == 0:
        return 0, Cover(())
    bit = {v: i for i, v in enumerate(colored)}

    candidates: list[dict[int, tuple[int, tuple[int, ...]]]] = [{} for _ in range(k)]
    for i, a in enumerate(colored):
        for b in colored[i:]:
            verts = t.path(a, b)
            mask = 0
            for v in verts:
                if v in bit:
                    mask |= 1 << bit[v]
            c = make_path(t, verts).cost
            for j in range(k):
                if mask >> j & 1:
                    prev = candidates[j].get(mask)
                    if prev is None or c < prev[0]:
                        candidates[j][mask] = (c, tuple(verts))
    # a candidate is useless if another one covers a superset at no more cost
    options: list[list[tuple[int, int, tuple[int, ...]]]] = []
    for j in range(k):
        items = sorted(candidates[j].items(), key=lambda kv: (kv[1][0], -bin(kv[0]).count("1")))
        kept: list[tuple[int, int, tuple[int, ...]]] = []
        for mask, (c, verts) in items:
            if not any(km | mask == km and kc <= c for km, kc, _ in kept):
                kept.append((mask, c, verts))
        options.append(kept)

    full = (1 << k) - 1
    expanded = 0

    @lru_cache(maxsize=None)
    def best(mask: int) -> tuple[int, int]:
        nonlocal expanded
        if mask == full:
            return 0, -1
        low = (~mask & (mask + 1)).bit_length() - 1
        top = (sys.maxsize, -1)
        for idx, (m, c, _) in enumerate(options[low]):
            expanded += 1
            if expanded > lim.max_paths_expanded:
                raise OracleTooLarge("oracle expansion budget exhausted")
            sub = best(mask | m)[0] + c
            if sub < top[0]:
                top = (sub, idx)
        return top

    total = best(0)[0]
    paths = []
    mask = 0
    while mask != full:
        low = (~mask & (mask + 1)).bit_length() - 1
        m, _, verts = options[low][best(mask)[1]]
        paths.append(make_path(t, verts))
        mask |= m
    best.cache_clear()
    return total, Cover(tuple(paths))


def _perfect_matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for i, other in enumerate(rest):
        for tail in _perfect_matchings(rest[:i] + rest[i + 1 :]):
            yield [(first, other)] + tail


def exists_hub_cover(t: UnrootedTree, v: int, max_leaves: int = 8) -> bool:
    """Whether some perfect leaf matching has all its paths through ``v`` and covers every edge."""
    leaves = list(t.leaves)
    if len(leaves) % 2:
        raise NoEvenLeavesError(f"tree has {len(leaves)} leaves")
    if len(leaves) > max_leaves:
        raise OracleTooLarge(f"{len(leaves)} leaves exceed the enumeration limit of {max_leaves}")
    all_edges = set(t.edges())
    paths = {(a, b): t.path(a, b) for i, a in enumerate(leaves) for b in leaves[i + 1 :]}
    for matching in _perfect_matchings(leaves):
        covered: set[tuple[int, int]] = set()
        for pair in matching:
            path = paths[pair]
            if v not in path:
                break
            covered.update((min(x, y), max(x, y)) for x, y in zip(path, path[1:]))
        else:
            if covered == all_edges:
                return True
    return False


# -- exhaustive generation -------------------------------------------------


def _forests(total: int, options: list[tuple[str, int]], start: int = 0) -> Iterator[list[str]]:
    """Multisets of subtrees with the given total size, as index-sorted lists."""
    if total == 0:
        yield []
        return
    for i in range(start, len(options)):
        text, size = options[i]
        if size <= total:
            for rest in _forests(total - size, options, i):
                yield [text] + rest


def _node(color: str, kids: list[str]) -> str:
    return "(" + color + "".join(" " + k for k in kids) + ")"


def _inner_shapes(max_size: int) -> dict[int, list[str]]:
    """Canonical subtrees below the root's children, by size.

    Tops are white (any number of children) or uncolored with two or more.
    """
    shapes: dict[int, list[str]] = {1: ["(w)"]}
    for size in range(2, max_size + 1):
        options = sorted((s, k) for k in range(1, size) for s in shapes[k])
        found = set()
        for kids in _forests(size - 1, options):
            found.add(_node("w", kids))
            if len(kids) >= 2:
                found.add(_node("u", kids))
        shapes[size] = sorted(found)
    return shapes


def enumerate_trees(max_vertices: int) -> Iterator[WhiteGreyTree]:
    """Every valid white-grey tree with 2 to ``max_vertices`` vertices, once per
    isomorphism class under reordering of children."""
    if max_vertices > 10:
        raise ValueError("exhaustive enumeration is limited to 10 vertices")
    if max_vertices < 2:
        return
    inner = _inner_shapes(max_vertices - 2)
    root_children: list[tuple[str, int]] = [("(g)", 1)]
    for size in range(2, max_vertices):
        options = sorted((s, k) for k in range(1, size) for s in inner[k])
        found = set()
        for kids in _forests(size - 1, options):
            found.add(_node("g", kids))
            found.add(_node("w", kids))
            if len(kids) >= 2:
                found.add(_node("u", kids))
        root_children.extend((s, size) for s in found)
    root_children.sort()
    for n in range(2, max_vertices + 1):
        for kids in _forests(n - 1, root_children):
            yield parse_tree(_node("u", kids))


def enumerate_unrooted(max_vertices: int) -> Iterator[UnrootedTree]:
    """One tree per isomorphism class, with 2 to ``max_vertices`` vertices."""
    import networkx as nx

    for n in range(2, max_vertices + 1):
        for g in nx.nonisomorphic_trees(n):
            yield UnrootedTree.from_edges(n, sorted(g.edges()))


# -- random generation -----------------------------------------------------


@dataclass(frozen=True)
class GenParams:
    seed: int
    max_vertices: int = 20
    grey_leaf_probability: float = 0.35
    chain_probability: float = 0.35
    grey_internal_probability: float = 0.1
    max_colored: int | None = None

    def __post_init__(self) -> None:
        if self.max_vertices < 2:
            raise ValueError("max_vertices must be at least 2")


def _split(rng: random.Random, total: int, parts: int, smallest: int = 1) -> list[int]:
    spare = total - parts * (smallest - 1)
    cuts = sorted(rng.sample(range(1, spare), parts - 1))
    return [b - a + smallest - 1 for a, b in zip([0] + cuts, cuts + [spare])]


def _grow(rng: random.Random, size: int, p: GenParams, deep: bool) -> tuple[str, list]:
    """Random subtree of exactly ``size`` vertices; ``deep`` keeps branch children
    at two or more vertices so that leaves sit at the end of chains."""
    if size == 1:
        return ("w", [])
    smallest = 2 if deep else 1
    most = min((size - 1) // smallest, 4)
    if size == 2 or most < 2 or rng.random() < p.chain_probability:
        return ("w", [_grow(rng, size - 1, p, deep)])
    parts = _split(rng, size - 1, rng.randint(2, most), smallest)
    return (rng.choice("wu"), [_grow(rng, s, p, deep) for s in parts])


def _random_shape(rng: random.Random, p: GenParams) -> tuple[str, list]:
    budget = rng.randint(max(1, p.max_vertices // 3), p.max_vertices - 1)
    # half of the trees get a single non-grey subtree, which is where dangerous
    # vertices live
    single = rng.random() < 0.5
    deep = rng.random() < 0.5
    kids = []
    while budget > 0:
        if budget == 1 or rng.random() < p.grey_leaf_probability:
            kids.append(("g", []))
            budget -= 1
            continue
        if single:
            grey_tail = rng.randint(0, min(3, budget - 2))
            size = budget - grey_tail
        else:
            size = rng.randint(2, budget)
        budget -= size
        if rng.random() < p.grey_internal_probability:
            parts = _split(rng, size - 1, rng.randint(1, min(size - 1, 3)))
            kids.append(("g", [_grow(rng, s, p, deep) for s in parts]))
        else:
            kids.append(_grow(rng, size, p, deep))
        if single:
            kids.extend(("g", []) for _ in range(budget))
            budget = 0
    rng.shuffle(kids)
    return ("u", kids)


def _shape_to_tree(shape: tuple[str, list]) -> WhiteGreyTree:
    colors: list[str] = []
    edges: list[tuple[int, int]] = []
    stack: list[tuple[tuple[str, list], int | None]] = [(shape, None)]
    while stack:
        (color, kids), parent = stack.pop()
        v = len(colors)
        colors.append(color)
        if parent is not None:
            edges.append((parent, v))
        stack.extend((kid, v) for kid in reversed(kids))
    return build(edges, colors)


def random_tree(p: GenParams) -> WhiteGreyTree:
    """A random valid white-grey tree; the same params always give the same tree."""
    rng = random.Random(p.seed)
    while True:
        tree = _shape_to_tree(_random_shape(rng, p))
        if p.max_colored is None or len(tree.colored_vertices()) <= p.max_colored:
            return tree


def random_unrooted(seed: int, n_leaves: int, chain_probability: float = 0.3) -> UnrootedTree:
    """A random tree with exactly ``n_leaves`` leaves and randomly permuted ids."""
    if n_leaves < 1:
        raise ValueError("need at least one leaf")
    if n_leaves == 1:
        return UnrootedTree(((),))
    rng = random.Random(seed)
    adj: list[list[int]] = [[1], [0]]
    leaves = [0, 1]
    internal: list[int] = []
    chain_steps = rng.randint(0, 3) if n_leaves == 2 else 0
    while len(leaves) < n_leaves or chain_steps > 0:
        u = len(adj)
        if internal and len(leaves) < n_leaves and rng.random() >= chain_probability:
            v = internal[rng.randrange(len(internal))]
        else:
            i = rng.randrange(len(leaves))
            v = leaves[i]
            leaves[i] = leaves[-1]
            leaves.pop()
            internal.append(v)
            chain_steps = max(0, chain_steps - 1)
        adj[v].append(u)
        adj.append([v])
        leaves.append(u)
    perm = list(range(len(adj)))
    rng.shuffle(perm)
    relabelled: list[tuple[int, ...]] = [()] * len(adj)
    for v, nbrs in enumerate(adj):
        relabelled[perm[v]] = tuple(perm[u] for u in nbrs)
    return UnrootedTree(tuple(relabelled))
