"""Geometric paths satisfy U|A| = sqrt(q) |A| U on their interior."""

from fractions import Fraction

from treeshift import classify as cl
from treeshift import families as F
from treeshift import oracle as O
from treeshift.measures import IDENTITY, psi_q

for q in (Fraction(1, 2), Fraction(2), Fraction(3)):
    s = F.gen_q_path(q, 10)
    scope = cl.interior_vertices(s)
    crit = cl.generalized_c_optimal(s, IDENTITY, psi_q(q), scope)
    g = O.check_generalized(O.from_shift(s), IDENTITY, psi_q(q), subspace=scope)
    print(f"q={q}: criterion {crit}, plain c_opt {cl.c_optimal(s)}, "
          f"oracle (a,b,c) = {g.intertwines_projections}, {g.intertwines_functions}, {g.commutes_with_A}")
