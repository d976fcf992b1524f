import sys

import pytest

from catalan_tangent.trees import leaf, node


@pytest.fixture
def sample_trees_9():
    """The three labeled trees on [9] used as worked examples for in-order words and active nodes."""
    first = node((6, 7, 3), leaf(4), node((1,), leaf(8), leaf(9, 5, 2)))
    second = node((3, 9, 6, 2, 1), leaf(5, 7, 8), leaf(4))
    third = node(
        (3,),
        node((4,), leaf(1), node((6,), leaf(9), leaf(7))),
        node((5,), leaf(8), leaf(2)),
    )
    return first, second, third


@pytest.fixture
def chain_case_pair():
    """Left and right trees of the (a-1)/(a-2) example."""
    before = node((3, 5, 2), node((1,), leaf(9), node((4,), leaf(7), leaf(6))), leaf(8))
    after = node(
        (2,),
        node((1,), leaf(9), node((3,), node((4,), leaf(7), leaf(6)), leaf(5))),
        leaf(8),
    )
    return before, after


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
