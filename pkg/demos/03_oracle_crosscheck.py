"""Compare the per-vertex verdicts with the dense matrix oracle on random trees."""

import numpy as np

from treeshift import classify as cl
from treeshift import families as F
from treeshift import oracle as O
from treeshift import scalar

rng = np.random.default_rng(4)
agree = 0
trees = F.corpus(seed=11, size=60)
for s in trees:
    scope = F.random_scope(rng, s)
    m = O.from_shift(s)
    c = cl.c_optimal(s, scope)
    oc = O.oracle_c_optimal(m, scope)
    same = (c == oc == scalar.INF) or (c != scalar.INF and abs(scalar.to_float(c) - oc) < 1e-6)
    agree += same
    if c != scalar.INF and c != 0:
        print(f"{len(s.tree):2d} vertices  scope {len(scope):2d}  exact {scalar.fmt(c):>6}  oracle {oc:.12f}")
print(f"\n{agree}/{len(trees)} agree")
