"""A root with two leaf children: the smallest shift that fails everything.

The root has norm sqrt(5) while both children have norm 0, so no child
shares the parent's norm.  The optimal constant is infinite and the image
measure sits at 0 while the modulus measure sits at sqrt(5).
"""

from treeshift import classify as cl
from treeshift.measures import absolutely_continuous, image_measure, modulus_measure
from treeshift.shift import basis
from treeshift.treespec import parse_tree_spec

s = parse_tree_spec("root w\nedge w a 1\nedge w b 2\n")
print("||S e_w||^2 =", s.vertex_norm_sq("w"))

rep = cl.classify(s, "full")
print("quasinormal:", rep.quasinormal, rep.witnesses.get("quasinormal"))
print("c_opt:", rep.c_opt)
print("abc3:", rep.abc3_holds)

mod = modulus_measure(s, basis("w"))
img = image_measure(s, basis("w"))
print("modulus measure:", mod)
print("image measure:  ", img)
print("image << modulus:", absolutely_continuous(img, mod))
