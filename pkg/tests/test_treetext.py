import pytest

from greycover.errors import TreeSyntaxError, TreeValidationError
from greycover.model import Color, stats
from greycover.oracle import GenParams, enumerate_trees, random_tree
from greycover.treetext import canonical_form, parse_tree, parse_unrooted, serialize_tree, serialize_unrooted

from conftest import TREES


def test_parse_two_vertices():
    t = parse_tree("(u (g))")
    assert t.n == 2
    assert t.root == 0
    assert t.color == (Color.UNCOLORED, Color.GREY)
    assert t.children[0] == (1,)


def test_unclosed_reports_end_of_input():
    with pytest.raises(TreeSyntaxError) as err:
        parse_tree("(u (g)")
    assert "end of input" in str(err.value)
    assert (err.value.line, err.value.column) == (1, 7)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("(x)", 1, 2),
        ("(u (g)))", 1, 8),
        ("(u\n (q))", 2, 3),
        ("(u (g)) (g)", 1, 9),
        ("(uw)", 1, 3),
        ("", 1, 1),
    ],
)
def test_syntax_error_positions(text, line, column):
    with pytest.raises(TreeSyntaxError) as err:
        parse_tree(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_tce_literal():
    t = parse_tree(TREES["T_CE"])
    assert t.n == 10
    s = stats(t)
    assert (s.w, s.g) == (3, 1)


def test_validation_errors_pass_through():
    with pytest.raises(TreeValidationError):
        parse_tree("(w (w))")


@pytest.mark.parametrize("text", list(TREES.values()) + ["(u)"])
def test_round_trip_identity(text):
    assert serialize_tree(parse_tree(text)) == text


def test_whitespace_normalised():
    assert serialize_tree(parse_tree("(u   (g) )")) == "(u (g))"
    assert serialize_tree(parse_tree("(u\n  (g)\n  (g))")) == "(u (g) (g))"


def test_round_trip_generated():
    for seed in range(200):
        t = random_tree(GenParams(seed))
        again = parse_tree(serialize_tree(t))
        assert again == t
        assert serialize_tree(again) == serialize_tree(t)


def test_canonical_form_sorts_children():
    a = parse_tree("(u (g) (w (w)))")
    b = parse_tree("(u (w (w)) (g))")
    assert canonical_form(a) == canonical_form(b) == "(u (g) (w (w)))"


def test_enumerated_trees_are_canonical():
    for t in enumerate_trees(7):
        assert canonical_form(t) == serialize_tree(t)


def test_unrooted_parse_keeps_neighbor_order():
    u = parse_unrooted("(w (u (w) (w) (u (w))))")
    assert u.adjacency[1] == (0, 2, 3, 4)
    assert u.adjacency[4] == (1, 5)
    assert parse_unrooted(serialize_unrooted(u)) == u
