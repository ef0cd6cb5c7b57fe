from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from treeshift import classify as cl
from treeshift import families, scalar
from treeshift.scalar import INF
from treeshift.shift import WeightedShift
from treeshift.tree import DirectedTree


def path(weights_sq, frontier=False):
    names = [f"n{k}" for k in range(len(weights_sq) + 1)]
    t = DirectedTree(names[0], zip(names, names[1:]))
    return WeightedShift(
        t, dict(zip(names[1:], map(Fraction, weights_sq))), frontier=[names[-1]] if frontier else ()
    )


def test_cherry_is_far_from_quasinormal(cherry):
    rep = cl.classify(cherry, "full")
    assert rep.c_opt == INF
    assert rep.quasinormal is False and rep.witnesses["quasinormal"] == ("w", "a")
    assert rep.abc3_holds is False and rep.witnesses["abc3"] == "w"
    assert cl.sleu_identity_check(cherry, "w", 1) == 25


def test_zero_shift():
    t = DirectedTree("o", [("o", "a")])
    s = WeightedShift(t, {})
    assert cl.c_optimal(s, "full") == 0
    assert cl.is_quasinormal(s, "full")[0]
    assert cl.abc3_holds(s, "full")[0]
    assert cl.sleu_identity_check(s, "o", 3) == 0


def test_isometric_path_interior():
    s = path([1] * 6, frontier=True)
    assert cl.c_optimal(s) == 1
    assert cl.is_quasinormal(s)[0]
    assert cl.is_hyponormal(s)[0] is True
    assert cl.hyponormal_sum(s, "n0") == 1


def test_bumped_path_witness():
    s = path([1, 1, 4, 1, 1, 1], frontier=True)
    ok, witness = cl.is_quasinormal(s)
    assert not ok and witness == ("n1", "n2")


def test_interior_of_plain_truncation():
    s = path([1] * 5, frontier=True)
    assert cl.interior_vertices(s) == ["n0", "n1", "n2", "n3"]
    assert cl.resolve_scope(s, "full") == list(s.tree.vertices)


def test_eunb_interior_depths():
    s = families.gen_eunb(3)
    assert {s.tree.depth(u) for u in cl.interior_vertices(s)} == {0, 1}


def test_unknown_hyponormality_at_the_cut():
    s = path([1] * 4, frontier=True)
    assert cl.is_hyponormal(s, "full")[0] is None


def test_generalized_reduces_to_plain():
    s = families.fig1_for_constant(4, 4)
    assert cl.generalized_c_optimal(s, cl.IDENTITY, cl.IDENTITY) == cl.c_optimal(s)


def test_q_path_generalized_criterion():
    from treeshift.measures import psi_q

    s = families.gen_q_path(2, 8)
    assert cl.generalized_c_optimal(s, cl.IDENTITY, psi_q(2)) == 1
    assert cl.c_optimal(s) == INF


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_sleu_on_eunb(alpha):
    s = families.gen_eunb(4)
    for u in cl.interior_vertices(s):
        assert cl.sleu_identity_check(s, u, alpha) == 0


def test_float_mode_matches_exact():
    for s in families.corpus(3, 30):
        a, b = cl.c_optimal(s, "full"), cl.c_optimal(s.to_float(), "full")
        assert (a == INF) == (b == INF)
        if a != INF:
            assert scalar.to_float(a) == pytest.approx(b)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_quasinormal_iff_constant_one(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    s = families.random_shift(rng, 15, echo=0.7)
    scope = families.random_scope(rng, s)
    qn = cl.is_quasinormal(s, scope)[0]
    c = cl.c_optimal(s, scope)
    nonzero = any(scalar.sign(s.vertex_norm_sq(u)) > 0 for u in scope)
    if nonzero:
        assert qn == (c == 1)
    if c != INF:
        assert cl.abc3_holds(s, scope)[0]
