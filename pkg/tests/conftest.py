import numpy as np
import pytest

from treeshift.tree import DirectedTree
from treeshift.shift import WeightedShift


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def cherry():
    # w -> {a, b} with weights 1 and 2
    return WeightedShift.from_weights(DirectedTree("w", [("w", "a"), ("w", "b")]), {"a": 1, "b": 2})


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
