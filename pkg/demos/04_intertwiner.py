"""Build the operator T with T A = |A| for the c = 4 comb and look at its norm."""

from treeshift import classify as cl
from treeshift import families as F
from treeshift import oracle as O

s = F.fig1_for_constant(4, 5)
scope = cl.interior_vertices(s)
m = O.from_shift(s)
T, diag = O.build_T(m, scope)
print("optimal constant:", diag.c)
print("||T||:", diag.norm_T, " (sqrt of the constant is 2)")
print("||TA - |A|||:", diag.ta_residual)
print("commutation with spectral projections:", diag.commutation_residual)
print("all diagnostics pass:", diag.passed)

# a contraction cannot move an axis it preserves the length of; this one does
print("\n2x2 counterexample with B = D = 1:", O.izonp_counterexample_check(1, 1))
