"""Plain-text tree specifications and DOT export.

Tree-spec format, one directive per line::

    # comment
    root w
    edge w a 2
    edge w b 1/3
    edge a c sqrt(3/4)
    frontier c
    norm c 1/2

``edge`` weights are integers, decimals, ``p/q`` rationals (all exact) or
``sqrt(p/q)``.  ``frontier`` marks a vertex whose children were cut off and
``norm`` gives the untruncated ``||S e_u||`` of such a vertex.
"""

from __future__ import annotations

import re
from fractions import Fraction

from . import scalar
from .shift import WeightedShift
from .tree import DirectedTree, TreeError


class TreeSpecError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


_SQRT = re.compile(r"^sqrt\((.+)\)$")


def parse_weight_sq(token: str, line: int | None = None):
    """Squared weight of an ``edge`` token."""
    m = _SQRT.match(token)
    try:
        if m:
            x = scalar.parse(m.group(1))
            sq = x
        else:
            x = scalar.parse(token)
            sq = x * x
    except ValueError as exc:
        raise TreeSpecError(str(exc), line) from None
    if isinstance(x, float) and x != x:
        raise TreeSpecError(f"malformed number {token!r}", line)
    if scalar.sign(x) < 0:
        raise TreeSpecError(f"negative weight {token}", line)
    return sq


def format_weight(weight_sq) -> str:
    """Inverse of :func:`parse_weight_sq` for exact rationals; 17 digits otherwise."""
    if isinstance(weight_sq, Fraction):
        w = scalar.sqrt(weight_sq)
        if isinstance(w, Fraction):
            return str(w)
        return f"sqrt({weight_sq})"
    return scalar.fmt(scalar.sqrt(weight_sq) if not isinstance(weight_sq, float) else weight_sq**0.5)


def parse_tree_spec(text: str) -> WeightedShift:
    root = None
    root_line = None
    edges: list[tuple[str, str]] = []
    edge_line: dict[str, int] = {}
    wsq: dict[str, object] = {}
    frontier: list[str] = []
    norms: dict[str, object] = {}
    first_line = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if first_line is None:
            first_line = no
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "root":
            if len(args) != 1:
                raise TreeSpecError("expected: root <id>", no)
            if root is not None:
                raise TreeSpecError(f"duplicate root (first at line {root_line})", no)
            root, root_line = args[0], no
        elif kind == "edge":
            if len(args) != 3:
                raise TreeSpecError("expected: edge <parent> <child> <weight>", no)
            p, c, w = args
            if c in edge_line:
                raise TreeSpecError(f"vertex {c} already has a parent (line {edge_line[c]})", no)
            if p == c:
                raise TreeSpecError(f"cycle: self loop at {p}", no)
            edges.append((p, c))
            edge_line[c] = no
            wsq[c] = parse_weight_sq(w, no)
        elif kind == "frontier":
            if len(args) != 1:
                raise TreeSpecError("expected: frontier <id>", no)
            frontier.append(args[0])
        elif kind == "norm":
            if len(args) != 2:
                raise TreeSpecError("expected: norm <id> <value>", no)
            norm = parse_weight_sq(args[1], no)
            norms[args[0]] = norm
        else:
            raise TreeSpecError(f"unknown directive {kind!r}", no)
    if root is None:
        raise TreeSpecError("missing root line", first_line or 1)
    if root in edge_line:
        raise TreeSpecError(f"cycle: the root {root} has a parent", edge_line[root])
    _check_reachable(root, edges, edge_line)
    tree = DirectedTree(root, edges)
    for u in frontier + list(norms):
        if u not in tree:
            raise TreeSpecError(f"unknown vertex {u}")
    return WeightedShift(tree, wsq, frontier=frontier, norm_sq_oracle=norms or None)


def _check_reachable(root, edges, edge_line):
    parent = {c: p for p, c in edges}
    for c in parent:
        seen = {c}
        u = c
        while u != root:
            if u not in parent:
                raise TreeSpecError(f"orphan vertex {u}: not connected to root {root}", edge_line[c])
            u = parent[u]
            if u in seen:
                raise TreeSpecError(f"cycle through {u}", edge_line[c])
            seen.add(u)


def format_tree_spec(s: WeightedShift) -> str:
    lines = [f"root {s.tree.root}"]
    for p, c in s.tree.edges():
        lines.append(f"edge {p} {c} {format_weight(s.weight_sq(c))}")
    for u in s.tree.vertices:
        if u in s.frontier:
            lines.append(f"frontier {u}")
            if s.norm_sq_oracle and u in s.norm_sq_oracle:
                lines.append(f"norm {u} {format_weight(s.norm_sq_oracle[u])}")
    return "\n".join(lines) + "\n"


def _dot_id(u) -> str:
    return '"' + str(u).replace('"', '\\"') + '"'


def export_dot(s: WeightedShift) -> str:
    """DOT digraph; vertices show ``||S e_u||^2``, edges their weights."""
    out = ["digraph shift {"]
    for u in s.tree.vertices:
        label = f"{u} [‖Se‖²={scalar.fmt(s.vertex_norm_sq(u))}]"
        out.append(f"  {_dot_id(u)} [label={_dot_id(label)}];")
    for p, c in s.tree.edges():
        out.append(f"  {_dot_id(p)} -> {_dot_id(c)} [label={_dot_id(format_weight(s.weight_sq(c)))}];")
    out.append("}")
    return "\n".join(out) + "\n"


_DOT_EDGE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*->\s*"((?:[^"\\]|\\.)*)"\s*\[label="([^"]*)"\];')
_DOT_NODE = re.compile(r'^\s*"((?:[^"\\]|\\.)*)"\s*\[label=')


def parse_dot(text: str) -> WeightedShift:
    """Read back the output of :func:`export_dot`."""
    nodes, edges, wsq = [], [], {}
    for no, line in enumerate(text.splitlines(), start=1):
        m = _DOT_EDGE.match(line)
        if m:
            p, c, w = (g.replace('\\"', '"') for g in m.groups())
            edges.append((p, c))
            wsq[c] = parse_weight_sq(w, no)
            continue
        m = _DOT_NODE.match(line)
        if m:
            nodes.append(m.group(1).replace('\\"', '"'))
    if not nodes:
        raise TreeSpecError("no vertices in DOT input")
    try:
        tree = DirectedTree(nodes[0], edges)
    except TreeError as exc:
        raise TreeSpecError(str(exc)) from None
    return WeightedShift(tree, wsq)


