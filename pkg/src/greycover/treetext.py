"""Parenthesised text format for trees.

Grammar::

    node  := '(' color { ws node } ')'
    color := 'u' | 'w' | 'g'

Vertex ids are assigned in pre-order, so the first vertex written is 0.
"""

from __future__ import annotations

from .errors import TreeSyntaxError
from .model import Color, WhiteGreyTree, _make_tree, build

_COLORS = {"u", "w", "g"}


def _scan(text: str) -> tuple[list[int | None], list[Color]]:
    parent: list[int | None] = []
    colors: list[Color] = []
    stack: list[int] = []
    line, col = 1, 0
    i = 0
    n = len(text)
    done = False
    expect_color = False
    while i < n:
        ch = text[i]
        i += 1
        if ch == "\n":
            line, col = line + 1, 0
            continue
        col += 1
        if ch.isspace():
            if expect_color:
                raise TreeSyntaxError("expected color after '('", line, col)
            continue
        if done:
            raise TreeSyntaxError(f"unexpected {ch!r} after end of tree", line, col)
        if expect_color:
            if ch not in _COLORS:
                raise TreeSyntaxError(f"expected one of u, w, g but found {ch!r}", line, col)
            if i < n and not (text[i].isspace() or text[i] in "()"):
                raise TreeSyntaxError("color must be a single character", line, col + 1)
            colors.append(Color(ch))
            expect_color = False
        elif ch == "(":
            parent.append(stack[-1] if stack else None)
            stack.append(len(parent) - 1)
            expect_color = True
        elif ch == ")":
            if not stack:
                raise TreeSyntaxError("unbalanced ')'", line, col)
            stack.pop()
            done = not stack
        else:
            raise TreeSyntaxError(f"unexpected {ch!r}", line, col)
    if expect_color or stack or not parent:
        raise TreeSyntaxError("unexpected end of input", line, col + 1)
    return parent, colors


def parse_tree(text: str, validate: bool = True) -> WhiteGreyTree:
    """Parse one white-grey tree.

    With ``validate`` the white-grey rules are enforced and a
    :class:`~greycover.errors.TreeValidationError` may be raised.
    """
    parent, colors = _scan(text)
    if validate:
        return build([(p, v) for v, p in enumerate(parent) if p is not None], colors)
    return _make_tree(parent, colors, 0)


def parse_unrooted(text: str):
    """Parse a tree and forget root and colors."""
    from .balance import UnrootedTree

    parent, _ = _scan(text)
    return UnrootedTree.from_edges(len(parent), [(p, v) for v, p in enumerate(parent) if p is not None])


def serialize_tree(t: WhiteGreyTree) -> str:
    out: list[str] = []
    stack: list[int | str] = [t.root]
    while stack:
        item = stack.pop()
        if item == ")":
            out.append(")")
            continue
        v = int(item)
        if out:
            out.append(" ")
        out.append("(" + t.color[v].value)
        stack.append(")")
        stack.extend(reversed(t.children[v]))
    return "".join(out)


def canonical_form(t: WhiteGreyTree) -> str:
    """Serialization with children sorted by their own canonical strings."""
    memo: dict[int, str] = {}
    for v in reversed(t.preorder()):
        parts = sorted(memo.pop(c) for c in t.children[v])
        memo[v] = "(" + t.color[v].value + "".join(" " + p for p in parts) + ")"
    return memo[t.root]


def serialize_unrooted(t) -> str:
    """Write an unrooted tree rooted at vertex 0; leaves as ``w``, other vertices as ``u``."""
    out: list[str] = []
    stack: list[tuple[int, int] | str] = [(0, -1)]
    while stack:
        item = stack.pop()
        if item == ")":
            out.append(")")
            continue
        v, p = item  # type: ignore[misc]
        if out:
            out.append(" ")
        out.append("(" + ("w" if len(t.adjacency[v]) <= 1 else "u"))
        stack.append(")")
        stack.extend((u, v) for u in reversed(t.adjacency[v]) if u != p)
    return "".join(out)
