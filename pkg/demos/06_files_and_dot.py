"""Round-trip a tree through the text format and render it for graphviz."""

from treeshift import families as F
from treeshift.treespec import export_dot, format_tree_spec, parse_tree_spec

s = F.gen_eunb(2)
text = format_tree_spec(s)
print(text)
assert parse_tree_spec(text) == s
print(export_dot(s))
