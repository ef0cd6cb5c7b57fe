from fractions import Fraction

import numpy as np
import pytest

from treeshift import classify as cl
from treeshift import families as F
from treeshift import scalar


def test_eunb_shape_and_weights():
    s = F.gen_eunb(2)
    assert len(s.tree) == 7
    assert sorted(s.weight_sq(v) for v in s.tree.children("o")) == [0, 1]
    assert s.tree.children_partition_check()
    for d in range(2, 7):
        e = F.gen_eunb(d)
        assert scalar.to_float(e.norm_bound()) == pytest.approx(d)


def test_eunb_has_no_silent_vertices():
    s = F.gen_eunb(5)
    for u in s.tree.vertices:
        kids = s.tree.children(u)
        if kids and u != s.tree.root and scalar.sign(s.weight_sq(u)) > 0:
            assert any(scalar.sign(s.weight_sq(v)) > 0 for v in kids)


def test_eunb_rejects_shallow():
    with pytest.raises(F.ParameterError):
        F.gen_eunb(1)


def test_oracle_norms_match_cached_norms():
    s = F.fig1_for_constant(4, 6)
    for u in cl.interior_vertices(s):
        if s.norm_sq_oracle and u in s.norm_sq_oracle:
            assert scalar.equal(s.norm_sq_oracle[u], s.vertex_norm_sq(u))


def test_fig2_constant_alpha():
    s = F.gen_fig2(Fraction(1, 4), 5)
    rep = cl.classify(s)
    assert rep.c_opt == 4
    assert rep.abc3_holds and rep.hyponormal is False
    assert cl.hyponormal_sum(s, "u1") == Fraction(5, 4)
    assert scalar.to_float(s.norm_bound()) <= 1 + 1e-12


def test_fig1_parameter_checks():
    with pytest.raises(F.ParameterError):
        F.gen_fig2(Fraction(1, 4), 5, beta_sq=Fraction(1, 2))
    with pytest.raises(F.ParameterError):
        F.fig1_for_constant(1, 5)


def test_fig1_unbounded_q():
    bounds = [
        scalar.to_float(F.gen_fig1(Fraction(1, 4), lambda n: (n + 1) ** 2, d).norm_bound())
        for d in range(3, 8)
    ]
    assert all(a < b for a, b in zip(bounds, bounds[1:]))


def test_fig1_vanishing_alpha_blows_up():
    cs = [cl.c_optimal(F.gen_fig1(lambda n: Fraction(1, n + 1), 3, d)) for d in range(3, 7)]
    assert all(a < b for a, b in zip(cs, cs[1:]))
    assert cl.abc3_holds(F.gen_fig1(lambda n: Fraction(1, n + 1), 3, 6))[0]


def test_fig3_rejects_delta_one():
    with pytest.raises(F.ParameterError):
        F.gen_fig3(Fraction(1, 4), Fraction(1, 4), 4)


def test_fig3_hyponormal():
    s = F.gen_fig3(Fraction(1, 4), Fraction(1), 5)
    rep = cl.classify(s)
    assert rep.hyponormal is True and rep.abc3_holds


def test_classical_paths():
    assert cl.is_quasinormal(F.gen_classical_path([2] * 6))[0]
    up = F.gen_classical_path([1, 2, 3, 4, 5, 6])
    assert not cl.abc3_holds(up)[0]


def test_corpus_is_seeded():
    a, b = F.corpus(7, 10), F.corpus(7, 10)
    assert a == b
    assert all(len(s.tree) <= 25 for s in a)
    palette_sq = {w * w for w in F.PALETTE}
    for s in a:
        assert all(s.weight_sq(v) in palette_sq for v in s.tree.non_root)


def test_make_family_unknown():
    with pytest.raises(F.ParameterError):
        F.make_family("fig9", 3)
    assert F.make_family("qpath", 4).name.startswith("qpath")


def test_random_scope_subset():
    rng = np.random.default_rng(0)
    s = F.random_shift(rng, 20, echo=0.7)
    assert set(F.random_scope(rng, s)) <= set(s.tree.vertices)
