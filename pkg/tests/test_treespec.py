from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from treeshift import families
from treeshift.shift import WeightedShift
from treeshift.treespec import (
    TreeSpecError,
    export_dot,
    format_tree_spec,
    parse_dot,
    parse_tree_spec,
)


def test_path_spec():
    s = parse_tree_spec("root w\nedge w a 2")
    assert s.weight_sq("a") == 4
    assert s.tree.children("w") == ["a"]


def test_rational_norms_exact():
    s = parse_tree_spec("root w\nedge w a 1/3\nedge w b 2/3")
    assert s.vertex_norm_sq("w") == Fraction(5, 9)


def test_comments_and_blank_lines():
    s = parse_tree_spec("# a cherry\n\nroot w  # top\nedge w a 0.5\n")
    assert s.weight_sq("a") == Fraction(1, 4)


@pytest.mark.parametrize(
    "text,line,needle",
    [
        ("edge w a 1", 1, "root"),
        ("root w\nroot v", 2, "duplicate root"),
        ("root w\nedge x a 1", 2, "orphan"),
        ("root w\nedge w a 1\nedge b c 1\nedge c b 1", 3, "cycle"),
        ("root w\nedge w a -1", 2, "negative"),
        ("root w\nedge w a 1/x", 2, "malformed"),
        ("root w\nedge w a", 2, "expected"),
        ("root w\nleaf a", 2, "unknown directive"),
    ],
)
def test_errors_carry_line_numbers(text, line, needle):
    with pytest.raises(TreeSpecError) as err:
        parse_tree_spec(text)
    assert err.value.line == line
    assert needle in str(err.value)


def test_norm_rows_feed_the_oracle():
    s = parse_tree_spec("root w\nedge w a 1\nfrontier a\nnorm a 1")
    assert s.effective_norm_sq("a") == 1
    assert s.vertex_norm_sq("a") == 0


def test_dot_small_graphs():
    one = export_dot(parse_tree_spec("root w"))
    assert one.count("label=") == 1 and "->" not in one
    two = export_dot(parse_tree_spec("root w\nedge w a 2"))
    assert two.count("->") == 1
    assert '"w" -> "a" [label="2"];' in two
    assert "w [‖Se‖²=4]" in two


def test_dot_eunb():
    dot = export_dot(families.gen_eunb(3))
    assert dot.count("[label=") - dot.count("->") == 15
    assert dot == export_dot(families.gen_eunb(3))


@pytest.mark.parametrize("s", [families.gen_eunb(3), families.gen_fig2(Fraction(1, 4), 4)])
def test_round_trip_families(s):
    back = parse_tree_spec(format_tree_spec(s))
    assert back == s
    assert back.frontier == s.frontier
    # DOT keeps the weights but not the frontier
    assert parse_dot(export_dot(s)) == WeightedShift(s.tree, s.weights_sq())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_random(seed):
    import numpy as np

    s = families.random_shift(np.random.default_rng(seed), 20)
    assert parse_tree_spec(format_tree_spec(s)) == s
    assert parse_dot(export_dot(s)) == s
