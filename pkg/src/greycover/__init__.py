"""Optimal colored path covers of white-grey trees and balanced vertices of trees."""

from .balance import (
    Pairing,
    UnrootedTree,
    WalkTrace,
    all_balanced,
    antipodal_pairing,
    common_vertex,
    delta,
    find_balanced_linear,
    find_balanced_walk,
    is_balanced,
    pair_through,
)
from .cover import (
    Cover,
    CostReport,
    Path,
    PathKind,
    build_cover,
    cost,
    mixed_paths,
    path_cost,
    trace,
    validate_cover,
    white_cost,
    white_cover,
)
from .model import (
    CaseAnalysis,
    CaseTag,
    Color,
    DerivedSubtree,
    TreeStats,
    WhiteGreyTree,
    bounds,
    build,
    classify,
    derive_white_subtree,
    stats,
)
from .oracle import GenParams, OracleLimit, enumerate_trees, exact_cost, exists_hub_cover, random_tree, random_unrooted
from .treetext import parse_tree, parse_unrooted, serialize_tree

__version__ = "0.1.0"
