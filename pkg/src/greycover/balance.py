"""Balanced vertices of unrooted trees and leaf pairings through them.

For a vertex ``v`` and an incident edge ``e``, ``delta(v, e)`` counts the leaves
whose path to ``v`` runs through ``e``.  ``v`` is balanced when no incident edge
carries more leaves than all the other incident edges together.  In a tree with
an even number of leaves a balanced vertex always exists, and the leaves can be
matched so that every matched path passes through it.
"""

from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import EdgeNotIncidentError, NoEvenLeavesError, NotBalancedError


@dataclass(frozen=True, eq=False)
class UnrootedTree:
    """Plain tree given by ordered neighbor lists.

    The neighbor order is the planar embedding used by :func:`antipodal_pairing`.
    """

    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.adjacency)
        if n == 0:
            raise ValueError("tree needs at least one vertex")
        if sum(map(len, self.adjacency)) != 2 * (n - 1):
            raise ValueError("edge count does not match a tree")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < n or u == v or v not in self.adjacency[u]:
                    raise ValueError(f"bad adjacency at vertex {v}")
        if len(self._rooting[2]) != n:
            raise ValueError("graph is not connected")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UnrootedTree":
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        return cls(tuple(map(tuple, adj)))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UnrootedTree):
            return NotImplemented
        return self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash(self.adjacency)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def is_leaf(self, v: int) -> bool:
        return len(self.adjacency[v]) <= 1

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v, nbrs in enumerate(self.adjacency) if len(nbrs) <= 1)

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def edges(self) -> list[tuple[int, int]]:
        return [(v, u) for v, nbrs in enumerate(self.adjacency) for u in nbrs if v < u]

    @cached_property
    def _rooting(self) -> tuple[list[int], list[int], list[int]]:
        """(parent, depth, order) of a breadth-first traversal from vertex 0."""
        n = len(self.adjacency)
        parent = [-1] * n
        depth = [0] * n
        seen = [False] * n
        seen[0] = True
        order = [0]
        for v in order:
            for u in self.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    order.append(u)
        return parent, depth, order

    def path(self, a: int, b: int) -> list[int]:
        parent, depth, _ = self._rooting
        up_a, up_b = [a], [b]
        while depth[up_a[-1]] > depth[up_b[-1]]:
            up_a.append(parent[up_a[-1]])
        while depth[up_b[-1]] > depth[up_a[-1]]:
            up_b.append(parent[up_b[-1]])
        while up_a[-1] != up_b[-1]:
            up_a.append(parent[up_a[-1]])
            up_b.append(parent[up_b[-1]])
        up_b.pop()
        return up_a + up_b[::-1]


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, int], ...]
    hub: int


@dataclass(frozen=True)
class WalkTrace:
    visited: tuple[int, ...]
    result: int


def _component_leaves(t: UnrootedTree, start: int, avoid: int) -> list[int]:
    """Leaves of ``t`` reachable from ``start`` without passing ``avoid``."""
    found = []
    stack = [(start, avoid)]
    while stack:
        v, p = stack.pop()
        if t.is_leaf(v):
            found.append(v)
        stack.extend((u, v) for u in t.adjacency[v] if u != p)
    return found


def branch_deltas(t: UnrootedTree, v: int) -> dict[int, int]:
    """``delta(v, {v, u})`` for every neighbor ``u`` of ``v``, keyed by ``u``."""
    return {u: len(_component_leaves(t, u, v)) for u in t.adjacency[v]}


def delta(t: UnrootedTree, v: int, e: Sequence[int]) -> int:
    a, b = e
    if v == a:
        other = b
    elif v == b:
        other = a
    else:
        raise EdgeNotIncidentError(f"vertex {v} is not an endpoint of edge {tuple(e)}")
    if other not in t.adjacency[v]:
        raise EdgeNotIncidentError(f"{tuple(e)} is not an edge")
    return len(_component_leaves(t, other, v))


def _oversaturated(deltas: dict[int, int]) -> list[int]:
    total = sum(deltas.values())
    return [u for u, d in deltas.items() if d > total - d]


def is_balanced(t: UnrootedTree, v: int) -> bool:
    """Check the balance inequality at ``v`` directly from the leaf counts.

    The two vertices of a single-edge tree are both treated as balanced, even
    though the inequality fails at each of them.
    """
    if t.n < 2:
        raise ValueError("balance needs a tree with at least two vertices")
    if t.n == 2:
        return True
    return not _oversaturated(branch_deltas(t, v))


def all_balanced(t: UnrootedTree) -> set[int]:
    return {v for v in range(t.n) if is_balanced(t, v)}


def _require_even(t: UnrootedTree) -> None:
    if t.n < 2:
        raise ValueError("tree needs at least two vertices")
    if t.leaf_count % 2:
        raise NoEvenLeavesError(f"tree has {t.leaf_count} leaves; an even count is required")


def find_balanced_walk(t: UnrootedTree, start: int) -> WalkTrace:
    """Follow oversaturated edges from ``start`` until a balanced vertex is reached.

    At each step the edge with the largest leaf count is taken, ties going to the
    smaller neighbor id.
    """
    _require_even(t)
    visited = [start]
    seen = {start}
    v = start
    while not is_balanced(t, v):
        deltas = branch_deltas(t, v)
        over = _oversaturated(deltas)
        v = min(over, key=lambda u: (-deltas[u], u))
        if v in seen:
            raise AssertionError(f"balance walk revisited vertex {v}")
        seen.add(v)
        visited.append(v)
    return WalkTrace(tuple(visited), v)


def find_balanced_linear(t: UnrootedTree) -> int:
    """Smallest-id balanced vertex, in time linear in the size of the tree.

    One bottom-up pass counts leaves below every vertex; the leaves on the parent
    side are the rest.  An internal vertex is balanced exactly when each of its
    sides holds at most half of the leaves.
    """
    _require_even(t)
    adj = t.adjacency
    n = len(adj)
    if n == 2:
        return 0
    parent = [-1] * n
    parent[0] = 0
    order = [0]
    for v in order:
        p = parent[v]
        for u in adj[v]:
            if u != p:
                parent[u] = v
                order.append(u)
    below = [1 if len(nbrs) == 1 else 0 for nbrs in adj]
    heaviest_child = [0] * n
    for v in order[:0:-1]:
        b = below[v]
        p = parent[v]
        below[p] += b
        if b > heaviest_child[p]:
            heaviest_child[p] = b
    total = below[0]
    half = total // 2
    for v in range(n):
        if heaviest_child[v] <= half and total - below[v] <= half and len(adj[v]) >= 2:
            return v
    raise AssertionError("no balanced vertex found in a tree with an even number of leaves")


def _branches(t: UnrootedTree, v: int) -> list[tuple[int, list[int]]]:
    branches = [(u, sorted(_component_leaves(t, u, v))) for u in t.adjacency[v]]
    if t.is_leaf(v):
        branches.append((v, [v]))
    return branches


def pair_through(t: UnrootedTree, v: int) -> Pairing:
    """Match all leaves so that every matched path passes through ``v``.

    Greedy: repeatedly match the two branches at ``v`` holding the most unmatched
    leaves (ties to the branch whose first vertex has the smaller id), taking the
    smallest leaf id within each branch.
    """
    _require_even(t)
    branches = _branches(t, v)
    total = sum(len(leaves) for _, leaves in branches)
    largest = max(len(leaves) for _, leaves in branches)
    if 2 * largest > total:
        raise NotBalancedError(f"vertex {v} is not balanced")
    heap = [(-len(leaves), root, leaves[::-1]) for root, leaves in branches if leaves]
    heapq.heapify(heap)
    pairs = []
    while heap:
        _, ra, la = heapq.heappop(heap)
        _, rb, lb = heapq.heappop(heap)
        a, b = la.pop(), lb.pop()
        pairs.append((min(a, b), max(a, b)))
        for root, leaves in ((ra, la), (rb, lb)):
            if leaves:
                heapq.heappush(heap, (-len(leaves), root, leaves))
    return Pairing(tuple(sorted(pairs)), v)


def embedding_leaf_order(t: UnrootedTree) -> list[int]:
    """Leaves in first-visit order of a depth-first walk from vertex 0."""
    order = []
    stack = [(0, -1)]
    while stack:
        v, p = stack.pop()
        if t.is_leaf(v):
            order.append(v)
        stack.extend((u, v) for u in reversed(t.adjacency[v]) if u != p)
    return order


def antipodal_pairing(t: UnrootedTree) -> Pairing:
    """Match the i-th leaf with the (i + n)-th one in embedding order."""
    _require_even(t)
    leaves = embedding_leaf_order(t)
    half = len(leaves) // 2
    pairs = [(leaves[i], leaves[i + half]) for i in range(half)]
    hub = common_vertex(t, pairs)
    if hub is None:
        raise AssertionError("antipodal paths do not share a vertex")
    return Pairing(tuple(sorted((min(a, b), max(a, b)) for a, b in pairs)), hub)


def common_vertex(t: UnrootedTree, paths: Sequence[tuple[int, int]]) -> int | None:
    """Smallest vertex lying on every listed path, or ``None``."""
    if not paths:
        return None
    common = set(t.path(*paths[0]))
    for a, b in paths[1:]:
        common.intersection_update(t.path(a, b))
        if not common:
            return None
    return min(common)


def pairing_problems(t: UnrootedTree, pairing: Pairing) -> list[str]:
    """Reasons ``pairing`` fails to be a hub-centred perfect leaf matching covering all edges."""
    problems = []
    matched = [x for pair in pairing.pairs for x in pair]
    if sorted(matched) != sorted(t.leaves):
        problems.append("not a perfect matching on the leaves")
    covered: set[tuple[int, int]] = set()
    for a, b in pairing.pairs:
        path = t.path(a, b)
        if pairing.hub not in path:
            problems.append(f"path {a}-{b} misses hub {pairing.hub}")
        covered.update((min(x, y), max(x, y)) for x, y in zip(path, path[1:]))
    missing = set(t.edges()) - covered
    if missing:
        problems.append(f"uncovered edges {sorted(missing)}")
    return problems
