import pytest

from greycover.treetext import parse_tree, parse_unrooted

TREES = {
    "T_CE": "(u (g) (w (u (w (w)) (w (w)) (w (w)))))",
    "T_G1": "(u (g))",
    "T_GG": "(u (g) (g))",
    "T_DGREY": "(u (g) (g (u (w) (w) (w))))",
    "T_STAR": "(u (g) (g) (u (w) (w) (w)))",
    "T_CASE1": "(u (g) (g) (w (w (u (w (w)) (w (w))))))",
    "T_CASE2": "(u (g) (w (u (w (w)) (w (w)))))",
}

# ids in pre-order of the text:
#   U_PATH4  a=0 b=1 c=2 d=3
#   U_STAR4  centre c=0, leaves 1..4
#   U_DSTAR  x1=0 a=1 x2=2 x3=3 b=4 y1=5, adjacency a: x1,x2,x3,b and b: a,y1
UNROOTED = {
    "U_PATH4": "(w (u (u (w))))",
    "U_STAR4": "(u (w) (w) (w) (w))",
    "U_DSTAR": "(w (u (w) (w) (u (w))))",
}


@pytest.fixture
def trees():
    return {name: parse_tree(text) for name, text in TREES.items()}


@pytest.fixture
def utrees():
    return {name: parse_unrooted(text) for name, text in UNROOTED.items()}


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
