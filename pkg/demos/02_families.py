"""Walk through the generated families and what the classifier says about each."""

from fractions import Fraction

from treeshift import classify as cl
from treeshift import families as F
from treeshift import scalar

print("binary tree with zero weights")
for d in range(2, 7):
    s = F.gen_eunb(d)
    print(f"  depth {d}: quasinormal={cl.is_quasinormal(s)[0]}  norm bound={scalar.fmt(s.norm_bound())}")

print("\nchain with alpha(n)^2 = 1/(n+1): the constant grows with depth")
for d in range(2, 8):
    rep = cl.classify(F.gen_fig2(lambda n: Fraction(1, n + 1), d))
    print(f"  depth {d}: c_opt={scalar.fmt(rep.c_opt)}  abc3={rep.abc3_holds}  hyponormal={rep.hyponormal}")

print("\nchain plus comb tuned to c = 4")
s = F.fig1_for_constant(4, 5)
rep = cl.classify(s)
print("  c_opt:", rep.c_opt)
print("  hyponormality sum at u1:", cl.hyponormal_sum(s, "u1"))
print("  norm bounds:", [round(scalar.to_float(F.fig1_for_constant(4, d).norm_bound()), 4) for d in range(2, 8)])

print("\nhyponormal variant")
rep = cl.classify(F.gen_fig3(Fraction(1, 4), Fraction(1), 5))
print(f"  hyponormal={rep.hyponormal}  c_opt={scalar.fmt(rep.c_opt)}")
