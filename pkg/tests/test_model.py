import pytest

from greycover.errors import TreeValidationError
from greycover.model import (
    FREE_PATHS,
    CaseTag,
    Color,
    bounds,
    build,
    ceil_half,
    classify,
    dangerous_vertices,
    derive_white_subtree,
    short_leaves,
    stats,
    validate,
)
from greycover.oracle import GenParams, enumerate_trees, random_tree
from greycover.treetext import parse_tree, serialize_tree


def kinds(text):
    with pytest.raises(TreeValidationError) as err:
        parse_tree(text)
    return err.value.kinds


# -- build / validation ----------------------------------------------------


def test_build_accepts_tce(trees):
    t = trees["T_CE"]
    assert validate(t) == t
    assert t.n == 10


def test_root_colored():
    assert "RootColored" in kinds("(w (w))")


def test_white_leaf_at_root():
    assert "WhiteLeafAtRoot" in kinds("(u (w))")


def test_branching_boundary():
    t = parse_tree("(u (u (w) (w)))")
    assert t.degree(1) == 3


@pytest.mark.parametrize(
    "text, kind",
    [
        ("(u (u (w)))", "UncoloredNonBranching"),
        ("(u (w (g)))", "GreyNotRootChild"),
        ("(u (g) (w (u) (w)))", "UncoloredNonBranching"),
    ],
)
def test_other_violations(text, kind):
    assert kind in kinds(text)


def test_violation_names_vertex():
    with pytest.raises(TreeValidationError) as err:
        parse_tree("(u (g) (w (g)))")
    assert [(v.kind, v.vertex) for v in err.value.violations] == [
        ("GreyNotRootChild", 3),
        ("NonRootLeafNotWhite", 3),
    ]


def test_build_from_edges():
    t = build([(0, 1), (0, 2)], "ugg")
    assert serialize_tree(t) == "(u (g) (g))"
    assert t.color[1] is Color.GREY


@pytest.mark.parametrize(
    "edges, colors",
    [
        ([(0, 1), (1, 0)], "ug"),  # cycle, no root
        ([(0, 1)], "ugg"),  # disconnected
        ([(0, 1), (2, 1)], "ugg"),  # two parents
    ],
)
def test_not_a_tree(edges, colors):
    with pytest.raises(TreeValidationError) as err:
        build(edges, colors)
    assert "NotATree" in err.value.kinds


def test_single_vertex_is_legal():
    t = parse_tree("(u)")
    assert stats(t).colored == 0
    assert derive_white_subtree(t).empty


def test_generated_trees_follow_the_rules():
    for seed in range(1000):
        t = random_tree(GenParams(seed, max_vertices=20))
        for v in range(t.n):
            if t.color[v] is Color.GREY:
                assert t.parent[v] == t.root
            if v != t.root and t.color[v] is Color.UNCOLORED:
                assert t.degree(v) >= 3


# -- stats / bounds --------------------------------------------------------


def test_stats_examples(trees):
    assert (stats(trees["T_CE"]).w, stats(trees["T_CE"]).g) == (3, 1)
    assert (stats(trees["T_G1"]).w, stats(trees["T_G1"]).g) == (0, 1)
    s = stats(trees["T_DGREY"])
    assert (s.w, s.g) == (3, 1)
    assert s.colored == 5


def test_stats_counts_are_consistent():
    for t in enumerate_trees(7):
        s = stats(t)
        assert 0 <= s.w + s.g <= s.colored


@pytest.mark.parametrize("x, expected", [(-3, -1), (-2, -1), (-1, 0), (0, 0), (1, 1), (2, 1), (3, 2)])
def test_ceil_half(x, expected):
    assert ceil_half(x) == expected


def test_bounds_examples(trees):
    assert bounds(trees["T_CE"]) == (4, 5)
    assert bounds(trees["T_G1"]) == (1, 2)
    assert bounds(trees["T_GG"]) == (1, 2)


# -- white subtree ---------------------------------------------------------


def test_white_subtree_of_tce(trees):
    t = trees["T_CE"]
    tw = derive_white_subtree(t)
    assert tw.removed_root
    assert tw.to_original[0] == 2
    assert len(tw.leaves()) == 4


def test_white_subtree_empty(trees):
    tw = derive_white_subtree(trees["T_G1"])
    assert tw.empty and tw.removed_root


def test_white_subtree_keeps_internal_grey(trees):
    t = trees["T_DGREY"]
    tw = derive_white_subtree(t)
    top = tw.to_original[0]
    assert t.color[top] is Color.GREY
    assert tw.tree.is_leaf(0)
    assert len(tw.leaves()) == 4


def test_white_subtree_keeps_branching_root(trees):
    tw = derive_white_subtree(trees["T_CASE1"])
    assert tw.removed_root
    tw = derive_white_subtree(parse_tree("(u (g) (w (w)) (w (w)))"))
    assert not tw.removed_root
    assert tw.tree.n == 5


def test_white_subtree_properties():
    for t in enumerate_trees(8):
        tw = derive_white_subtree(t)
        assert len(set(tw.to_original)) == len(tw.to_original)
        assert not set(tw.to_original) & set(t.grey_leaves())
        if tw.tree is not None:
            for v, orig in enumerate(tw.to_original):
                assert tw.tree.color[v] is t.color[orig]


# -- short leaves / dangerous vertices / cases -----------------------------


def test_short_leaves_direct():
    t = parse_tree("(u (g) (g) (w (w)))")
    assert short_leaves(t) == [1, 2]


def test_short_leaf_looks_through_uncolored_chain():
    # after the grey leaves go, the branching root keeps degree 2 in T_w
    t = parse_tree("(u (g) (w (w)) (w (w) (w)))")
    tw = derive_white_subtree(t)
    assert tw.tree is not None
    assert short_leaves(tw.tree)


def test_dangerous_examples(trees):
    assert dangerous_vertices(trees["T_CE"]) == [2]
    assert dangerous_vertices(trees["T_STAR"]) == []
    assert dangerous_vertices(trees["T_CASE1"]) == [3, 4]
    assert dangerous_vertices(trees["T_GG"]) == []


def test_bare_chain_is_dangerous():
    t = parse_tree("(u (g) (w (w (w))))")
    assert dangerous_vertices(t) == [2, 3]
    case = classify(t)
    assert case.tw_leaves == stats(t).w + 1


def test_classify_examples(trees):
    ce = classify(trees["T_CE"])
    assert ce.case_tag is CaseTag.DANGER_OTHERWISE
    assert ce.dangerous == {2}
    assert ce.f == 1

    star = classify(trees["T_STAR"])
    assert star.case_tag is CaseTag.NO_DANGER_OTHERWISE
    assert not star.dangerous
    assert star.f == 0

    case2 = classify(trees["T_CASE2"])
    assert case2.case_tag is CaseTag.DANGER_ODD_ONE_WHITE_DANGEROUS_SHORT
    assert case2.f == 0

    assert classify(trees["T_CASE1"]).case_tag is CaseTag.DANGER_ODD_NO_SHORT


def test_free_path_table():
    assert [FREE_PATHS[tag] for tag in CaseTag] == [1, 0, 2, 0, 1]


def test_classify_is_total_and_consistent():
    seen = set()
    for t in enumerate_trees(9):
        case = classify(t)
        seen.add(case.case_tag)
        assert case.f == FREE_PATHS[case.case_tag]
        assert case.case_tag.value.startswith("Danger_") == bool(case.dangerous)
        if not case.tw.empty:
            assert case.tw_leaves == case.stats.w + (1 if case.dangerous else 0)
    assert seen == set(CaseTag)
