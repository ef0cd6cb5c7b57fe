"""Acceptance criteria 1-11.

Each test records one PASS/FAIL line; ``conftest.py`` prints them at the end
of the run.  ``python tests/test_acceptance.py`` prints them directly.
"""

from __future__ import annotations

import time
from fractions import Fraction

import numpy as np

from treeshift import classify as cl
from treeshift import families as F
from treeshift import oracle as O
from treeshift import scalar
from treeshift.measures import COLLAPSE, IDENTITY, psi_q
from treeshift.scalar import INF

SEED = 20240601
C_TOL = 1e-6
RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> bool:
    RESULTS[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])
    return ok


def c_match(a, b) -> bool:
    if a == INF or b == INF:
        return a == b
    return abs(scalar.to_float(a) - b) <= C_TOL * max(1.0, abs(b))


_CORPUS = None


def corpus():
    """Each corpus tree twice: on full scope and on a seeded random scope."""
    global _CORPUS
    if _CORPUS is None:
        rng = np.random.default_rng(SEED + 1)
        trees = F.corpus(SEED, 200, 25)
        _CORPUS = [(s, "full") for s in trees] + [(s, F.random_scope(rng, s)) for s in trees]
    return _CORPUS


def _subspace(s, scope):
    return None if scope == "full" else cl.resolve_scope(s, scope)


def dense_matrices(n=50):
    rng = np.random.default_rng(SEED + 2)
    out = []
    for i in range(n):
        dim = int(rng.integers(2, 13))
        out.append(O.random_dense(rng, dim) if i % 2 else O.random_quasinormal(rng, dim))
    return out


def test_criterion_01_classifier_oracle_agreement():
    t0 = time.perf_counter()
    bad, full_bad = [], []
    for k, (s, scope) in enumerate(corpus()):
        m = O.from_shift(s)
        sub = _subspace(s, scope)
        c = cl.c_optimal(s, scope)
        oc = O.oracle_c_optimal(m, sub)
        qn = cl.is_quasinormal(s, scope)[0]
        oqn = O.check_quasinormal(m, sub)
        if not (c_match(c, oc) and qn == oqn):
            (full_bad if scope == "full" else bad).append(k)
    elapsed = time.perf_counter() - t0
    ok = not bad and not full_bad and elapsed < 30
    assert record(1, ok, f"200 trees full + 200 scoped, mismatches {full_bad + bad}, {elapsed:.1f}s")


def test_criterion_02_three_conditions_equivalent():
    rng = np.random.default_rng(SEED + 3)
    bad = []
    for k, (s, scope) in enumerate(corpus()):
        v = O.chq2_conditions(O.from_shift(s), rng, 100, _subspace(s, scope))
        if not v.agree:
            bad.append(("tree", k))
    positives = 0
    for k, A in enumerate(dense_matrices()):
        v = O.chq2_conditions(O.MatrixOperator(A), rng, 100)
        positives += v.commutation
        if not v.agree:
            bad.append(("matrix", k))
    ok = not bad
    assert record(2, ok, f"400 tree instances + 50 matrices ({positives} quasinormal), disagreements {bad}")


def test_criterion_03_quasinormal_iff_constant_one():
    bad, n = [], 0
    for k, (s, scope) in enumerate(corpus()):
        vs = cl.resolve_scope(s, scope)
        if all(scalar.sign(s.vertex_norm_sq(u)) == 0 for u in vs):
            continue
        n += 1
        qn = cl.is_quasinormal(s, vs)[0]
        c = cl.c_optimal(s, vs)
        if qn != (c == 1):
            bad.append(k)
        f = s.to_float()
        cf = cl.c_optimal(f, vs)
        if cl.is_quasinormal(f, vs)[0] != (cf != INF and abs(cf - 1) <= C_TOL):
            bad.append(("float", k))
    assert record(3, not bad, f"{n} nonzero instances (exact and float), violations {bad}")


def test_criterion_04_intertwiner_construction():
    bad, n = [], 0
    for k, (s, scope) in enumerate(corpus()):
        if cl.c_optimal(s, scope) == INF:
            continue
        n += 1
        m = O.from_shift(s)
        T, diag = O.build_T(m, _subspace(s, scope))
        if not diag.passed:
            bad.append((k, diag))
    assert record(4, not bad and n > 0, f"{n} instances with finite constant, failures {[b[0] for b in bad]}")


def test_criterion_05_isometric_restriction():
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 9))
        T, K = O.random_partial_contraction(rng, n, int(rng.integers(1, n + 1)))
        worst = max(worst, O.izonp_residual(T, K))
    draws = []
    while len(draws) < 20:
        B, D = rng.standard_normal(2)
        if B + D != 0:
            draws.append(O.izonp_counterexample_check(B, D))
    ok = worst <= 1e-9 and all(draws)
    assert record(5, ok, f"max residual {worst:.1e} over 100 contractions, 20/20 counterexamples: {all(draws)}")


def test_criterion_06_comb_with_constant_four():
    t0 = time.perf_counter()
    s = F.fig1_for_constant(4, 5)
    rep = cl.classify(s)
    chain = [u for u in rep.scope if u.startswith("u") and u != "u0"]
    sums = {u: cl.hyponormal_sum(s, u) for u in chain}
    bounds = [F.fig1_for_constant(4, d).norm_bound() for d in range(2, 8)]
    increasing = all(scalar.compare(a, b) < 0 for a, b in zip(bounds, bounds[1:]))
    elapsed = time.perf_counter() - t0
    ok = (
        rep.c_opt == 4
        and isinstance(rep.c_opt, Fraction)
        and rep.hyponormal is False
        and chain
        and all(v == Fraction(5, 4) for v in sums.values())
        and rep.abc3_holds
        and increasing
        and elapsed < 5
    )
    assert record(
        6, ok,
        f"c_opt={scalar.fmt(rep.c_opt)}, chain sums {sorted(set(map(str, sums.values())))}, "
        f"abc3={rep.abc3_holds}, bound increasing={increasing}, {elapsed:.2f}s",
    )


def test_criterion_07_vanishing_alpha_chain():
    got = {}
    ok = True
    for D in range(2, 9):
        s = F.gen_fig2(lambda n: Fraction(1, n + 1), D)
        rep = cl.classify(s)
        got[D] = scalar.fmt(rep.c_opt)
        ok &= rep.c_opt == D + 1 and rep.abc3_holds and rep.hyponormal is False
    assert record(7, ok, f"c_opt by depth {got}")


def test_criterion_08_eunb_truncations():
    ok, checked = True, 0
    for D in range(2, 7):
        s = F.gen_eunb(D)
        ok &= cl.is_quasinormal(s)[0]
        for u in cl.interior_vertices(s):
            for alpha in (Fraction(1, 2), Fraction(1), Fraction(2)):
                checked += 1
                ok &= cl.sleu_identity_check(s, u, alpha) == 0
    assert record(8, ok, f"depths 2-6 quasinormal, {checked} zero residuals checked")


def test_criterion_09_hyponormal_variant_validator():
    rng = np.random.default_rng(SEED + 9)
    mismatches, built, hypo_bad = 0, 0, 0
    for _ in range(100):
        a_next = Fraction(int(rng.integers(1, 20)), 20)
        beta = 1 - a_next
        gamma = Fraction(int(rng.integers(1, 40)), 20)
        delta = beta + gamma
        if F.abgd1_holds(a_next, beta, delta) != F.abgd2_holds(delta):
            mismatches += 1
        if F.abgd2_holds(delta):
            built += 1
            rep = cl.classify(F.gen_fig3(a_next, gamma, 5))
            hypo_bad += rep.hyponormal is not True
    ok = mismatches == 0 and hypo_bad == 0 and built > 0
    assert record(9, ok, f"100 draws, {mismatches} validator mismatches, {built} built, {hypo_bad} not hyponormal")


def test_criterion_10_transported_measures():
    rng = np.random.default_rng(SEED + 10)
    pairs = [
        (IDENTITY, IDENTITY),
        (IDENTITY, psi_q(Fraction(1, 2))),
        (IDENTITY, psi_q(2)),
        (COLLAPSE, IDENTITY),
    ]
    bad = []
    mats = [O.MatrixOperator(A) for A in dense_matrices()]
    trees = [(O.from_shift(s), _subspace(s, sc)) for s, sc in corpus()[180:200]]
    for k, (m, sub) in enumerate([(m, None) for m in mats] + trees):
        for phi, psi in pairs:
            g = O.check_generalized(m, phi, psi, rng, 100, sub)
            if not g.operator_conditions_agree:
                bad.append((k, phi.name, psi.name))
    worst = 0.0
    qbad = []
    for q in (Fraction(1, 2), Fraction(2), Fraction(3)):
        s = F.gen_q_path(q, 10)
        scope = cl.interior_vertices(s)
        if cl.generalized_c_optimal(s, IDENTITY, psi_q(q), scope) != 1:
            qbad.append(q)
        g = O.check_generalized(O.from_shift(s), IDENTITY, psi_q(q), rng, 100, scope)
        worst = max(worst, g.residuals["b"])
        if not g.intertwines_functions:
            qbad.append(q)
    ok = not bad and not qbad and worst <= 1e-9
    assert record(10, ok, f"70 operators x 4 pairs, disagreements {bad}; q-paths residual {worst:.1e}")


def test_criterion_11_classical_paths():
    rng = np.random.default_rng(SEED + 11)
    positive = [w for w in F.PALETTE if w > 0]
    bad, qn_count = [], 0
    for k in range(50):
        n = int(rng.integers(3, 12))
        weights = [positive[int(rng.integers(len(positive)))]]
        for _ in range(n - 1):
            weights.append(weights[-1] if rng.random() < 0.6 else positive[int(rng.integers(len(positive)))])
        s = F.gen_classical_path(weights, n)
        scope = cl.interior_vertices(s)
        a, q = cl.abc3_holds(s, scope)[0], cl.is_quasinormal(s, scope)[0]
        qn_count += q
        if a != q:
            bad.append(k)
    assert record(11, not bad, f"50 paths ({qn_count} quasinormal), abc3/quasinormal mismatches {bad}")


if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
