"""Generators for the example families, as finite truncations.

Each generator returns a :class:`WeightedShift` on a tree cut off at
``depth``.  Vertices at the cut form the shift's ``frontier``.  The families
built from sequences (``fig1``, ``fig2``, ``fig3``) also attach the exact
norms of the untruncated operator, so classification on the interior reaches
one level further down.

Sequences are passed as *squared* values, either a constant or a callable
``n -> value``, so that irrational weights such as ``sqrt(3)/2`` stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
import sympy

from . import scalar
from .shift import WeightedShift
from .tree import DirectedTree

Sequence = Callable[[int], object]

#: weight palette of the random corpus
PALETTE = tuple(Fraction(x) for x in ("0", "1/4", "1/3", "1/2", "1", "2", "3", "4"))


class ParameterError(ValueError):
    """A family's defining equations are violated."""


def _seq(x) -> Sequence:
    if callable(x):
        return lambda n: scalar.normalize(x(n))
    value = scalar.normalize(x)
    return lambda n: value


def _positive(name, value, n):
    if scalar.sign(value) <= 0:
        raise ParameterError(f"{name}({n})^2 = {scalar.fmt(value)} must be positive")


@dataclass
class FamilyParams:
    family: str
    depth: int
    sequences: dict = field(default_factory=dict)

    def build(self) -> WeightedShift:
        return make_family(self.family, self.depth, **self.sequences)


# -- the binary tree with zero weights ------------------------------------------------------


def gen_eunb(depth: int) -> WeightedShift:
    """Binary tree whose zero-weight branches let the norms grow without bound.

    Under every vertex the first child gets weight 0.  The second gets
    ``n + 1`` when the vertex itself (at level ``n``) has weight 0, and
    inherits the vertex's weight otherwise.  The root behaves as a
    zero-weight vertex at level 0.
    """
    if depth < 2:
        raise ParameterError("eunb needs depth >= 2")
    root = "o"
    edges, wsq = [], {}
    level = {root: Fraction(0)}
    frontier = [root]
    for n in range(depth):
        nxt = []
        for u in frontier:
            lam = level[u]
            v, w = _child(u, "0"), _child(u, "1")
            edges += [(u, v), (u, w)]
            wsq[v] = Fraction(0)
            wsq[w] = Fraction(n + 1) ** 2 if lam == 0 else lam
            level[v], level[w] = wsq[v], wsq[w]
            nxt += [v, w]
        frontier = nxt
    tree = DirectedTree(root, edges)
    return WeightedShift(tree, wsq, frontier=frontier, unbounded_family=True, name=f"eunb(depth={depth})")


def _child(u: str, bit: str) -> str:
    return bit if u == "o" else u + bit


# -- chains with side paths ---------------------------------------------------------------


class _Builder:
    def __init__(self, root, depth):
        self.root, self.depth = root, depth
        self.edges, self.wsq, self.oracle = [], {}, {}
        self.at_depth = {root: 0}

    def add(self, parent, child, weight_sq):
        d = self.at_depth[parent] + 1
        if d > self.depth:
            return False
        self.edges.append((parent, child))
        self.wsq[child] = weight_sq
        self.at_depth[child] = d
        return True

    def path(self, parent, prefix, weight_sq, norm_sq):
        """Constant-weight path hanging below ``parent``, to the cut."""
        k, u = 1, parent
        while True:
            v = f"{prefix}_{k}"
            if not self.add(u, v, weight_sq):
                break
            self.oracle[v] = norm_sq
            u, k = v, k + 1

    def shift(self, name, unbounded=None):
        tree = DirectedTree(self.root, self.edges)
        frontier = [u for u, d in self.at_depth.items() if d == self.depth]
        return WeightedShift(
            tree,
            self.wsq,
            frontier=frontier,
            norm_sq_oracle=self.oracle,
            unbounded_family=unbounded,
            name=name,
        )


def _chain_sequences(alpha_sq, beta_sq, depth):
    """Resolve and validate ``alpha(n)^2 + beta(n-1)^2 = 1``."""
    a = _seq(alpha_sq)
    if beta_sq is None:
        b = lambda n: scalar.normalize(1 - a(n + 1))  # noqa: E731
    else:
        b = _seq(beta_sq)
    for n in range(1, depth + 2):
        _positive("alpha", a(n), n)
        _positive("beta", b(n - 1), n - 1)
        if not scalar.equal(a(n) + b(n - 1), Fraction(1)):
            raise ParameterError(
                f"alpha(n)^2 + beta(n-1)^2 = 1 fails at n={n}: "
                f"{scalar.fmt(a(n))} + {scalar.fmt(b(n - 1))}"
            )
    return a, b


def _chain(bld: _Builder, a, b, side):
    """Chain ``u_0 = root, u_1, ...`` with ``lambda_{u_i} = alpha(i)``; ``side(i)`` adds the rest."""
    i = 0
    while True:
        u = f"u{i}"
        bld.oracle[u] = Fraction(1)
        if not bld.add(u, f"u{i + 1}", a(i + 1)):
            side(i)
            break
        side(i)
        i += 1


def gen_fig2(alpha_sq, depth: int, beta_sq=None) -> WeightedShift:
    """Chain ``u_i`` with a constant-weight ``beta(i)`` path hanging from each ``u_i``.

    ``||S e_{u_i}|| = 1`` for every ``i``; the side path starts at ``w_i``.
    """
    if depth < 2:
        raise ParameterError("depth must be >= 2")
    a, b = _chain_sequences(alpha_sq, beta_sq, depth)
    bld = _Builder("u0", depth)

    def side(i):
        w = f"w{i}"
        if bld.add(f"u{i}", w, b(i)):
            bld.oracle[w] = b(i)
            bld.path(w, w, b(i), b(i))

    _chain(bld, a, b, side)
    return bld.shift(f"fig2(depth={depth})", unbounded=False)


def gen_fig1(alpha_sq, q_sq, depth: int, beta_sq=None, gamma_sq=None, q_unbounded=None) -> WeightedShift:
    """The ``fig2`` skeleton plus a comb ``r_0, r_1, ...`` attached at the root.

    ``lambda_{r_0} = q(0)``; under ``r_n`` sit ``r_{n+1}`` with weight 1 and
    ``s_n`` with weight ``q(n)``, and below ``s_n`` a constant-weight
    ``gamma(n)`` path, where ``1 + q(n)^2 = gamma(n)^2``.
    """
    if depth < 2:
        raise ParameterError("depth must be >= 2")
    a, b = _chain_sequences(alpha_sq, beta_sq, depth)
    q = _seq(q_sq)
    g = (lambda n: scalar.normalize(1 + q(n))) if gamma_sq is None else _seq(gamma_sq)
    for n in range(depth + 1):
        _positive("q", q(n), n)
        if not scalar.equal(1 + q(n), g(n)):
            raise ParameterError(f"1 + q(n)^2 = gamma(n)^2 fails at n={n}")
    bld = _Builder("u0", depth)

    def side(i):
        w = f"w{i}"
        if bld.add(f"u{i}", w, b(i)):
            bld.oracle[w] = b(i)
            bld.path(w, w, b(i), b(i))
        if i == 0:
            _comb(bld, q, g)

    _chain(bld, a, b, side)
    bld.oracle["u0"] = g(0)
    return bld.shift(f"fig1(depth={depth})", unbounded=q_unbounded)


def _comb(bld: _Builder, q, g):
    parent, n, w = "u0", 0, q(0)
    while True:
        r = f"r{n}"
        if not bld.add(parent, r, w):
            return
        bld.oracle[r] = g(n)
        s = f"s{n}"
        if bld.add(r, s, q(n)):
            bld.oracle[s] = g(n)
            bld.path(s, s, g(n), g(n))
        parent, n, w = r, n + 1, Fraction(1)


def fig1_for_constant(c, depth: int) -> WeightedShift:
    """``fig1`` tuned so that the optimal constant is exactly ``c > 1``.

    ``alpha(n) = 1/sqrt(c)`` and ``q(n) = 1/sqrt(c - 1) + n``, so both the
    chain and the root's comb bind at ``c``.
    """
    c = scalar.normalize(c)
    if scalar.compare(c, Fraction(1)) <= 0:
        raise ParameterError("c must exceed 1")
    base = 1 / sympy.sqrt(scalar.to_sympy(c - 1))
    return gen_fig1(
        1 / c,
        lambda n: sympy.expand((base + n) ** 2),
        depth,
        q_unbounded=True,
    )


def abgd1_holds(alpha_next_sq, beta_sq, delta_sq) -> bool:
    """``beta(n)^2 / delta(n)^2 + alpha(n+1)^2 < 1``."""
    return scalar.compare(scalar.ratio(beta_sq, delta_sq) + alpha_next_sq, Fraction(1)) < 0


def abgd2_holds(delta_sq) -> bool:
    """``delta(n) > 1``."""
    return scalar.compare(delta_sq, Fraction(1)) > 0


def gen_fig3(alpha_sq, gamma_sq, depth: int, beta_sq=None, delta_sq=None) -> WeightedShift:
    """A hyponormal variant with nonzero weights.

    Chain ``u_i`` as in ``fig2``; ``w_i`` (weight ``beta(i)``) has children
    ``a_i`` (weight ``beta(i)``) and ``b_i`` (weight ``gamma(i)``), and both
    carry constant-weight ``delta(i)`` paths, ``delta^2 = beta^2 + gamma^2``.
    """
    if depth < 2:
        raise ParameterError("depth must be >= 2")
    a, b = _chain_sequences(alpha_sq, beta_sq, depth)
    g = _seq(gamma_sq)
    d = (lambda n: scalar.normalize(b(n) + g(n))) if delta_sq is None else _seq(delta_sq)
    for n in range(depth + 1):
        _positive("gamma", g(n), n)
        if not scalar.equal(d(n), b(n) + g(n)):
            raise ParameterError(f"delta(n)^2 = beta(n)^2 + gamma(n)^2 fails at n={n}")
        if not abgd2_holds(d(n)):
            raise ParameterError(f"delta(n) > 1 fails at n={n}")
        if not abgd1_holds(a(n + 1), b(n), d(n)):
            raise ParameterError(f"beta(n)^2/delta(n)^2 + alpha(n+1)^2 < 1 fails at n={n}")
    bld = _Builder("u0", depth)

    def side(i):
        w = f"w{i}"
        if not bld.add(f"u{i}", w, b(i)):
            return
        bld.oracle[w] = d(i)
        for name, weight in ((f"a{i}", b(i)), (f"b{i}", g(i))):
            if bld.add(w, name, weight):
                bld.oracle[name] = d(i)
                bld.path(name, name, d(i), d(i))

    _chain(bld, a, b, side)
    return bld.shift(f"fig3(depth={depth})", unbounded=False)


# -- paths ----------------------------------------------------------------------------------


def gen_classical_path(weights, depth: int | None = None, truncated: bool = True) -> WeightedShift:
    """Path ``n0 -> n1 -> ...`` with ``lambda_{n_k} = weights[k-1]``.

    With ``truncated`` the last vertex is a frontier vertex.
    """
    weights = list(weights)
    if depth is None:
        depth = len(weights)
    if len(weights) != depth:
        raise ParameterError("need exactly `depth` weights")
    names = [f"n{k}" for k in range(depth + 1)]
    tree = DirectedTree(names[0], zip(names, names[1:]))
    wsq = {}
    for v, w in zip(names[1:], weights):
        w = scalar.normalize(w)
        wsq[v] = w * w
    return WeightedShift(tree, wsq, frontier=[names[-1]] if truncated else [], name="path")


def gen_q_path(q, depth: int, w0_sq=1) -> WeightedShift:
    """Path with ``w_{n+1}^2 = w_n^2 / q``, the model q-deformed shift."""
    q = scalar.normalize(q)
    w0_sq = scalar.normalize(w0_sq)
    names = [f"n{k}" for k in range(depth + 1)]
    tree = DirectedTree(names[0], zip(names, names[1:]))
    wsq, cur = {}, w0_sq
    for v in names[1:]:
        wsq[v] = cur
        cur = cur / q
    return WeightedShift(tree, wsq, frontier=[names[-1]], name=f"qpath(q={scalar.fmt(q)})")


# -- random corpus --------------------------------------------------------------------------


def random_shift(rng, max_vertices: int = 25, echo: float = 0.0, palette=PALETTE) -> WeightedShift:
    """Random rooted tree with weights drawn from ``palette``.

    With probability ``echo`` a child copies its parent's multiset of child
    weights, which makes equal vertex norms (and so finite optimal constants
    on sub-scopes) common instead of rare.
    """
    n = int(rng.integers(1, max_vertices + 1))
    edges, wsq = [], {}
    pattern = {"v0": None}
    order = ["v0"]
    queue = ["v0"]
    count = 1
    while queue and count < n:
        u = queue.pop(0)
        if pattern[u] is not None:
            weights = list(pattern[u])
        else:
            k = int(rng.integers(0, 4))
            weights = [palette[int(rng.integers(len(palette)))] for _ in range(k)]
        if u == "v0" and not weights:
            weights = [palette[int(rng.integers(len(palette)))]]
        for w in weights:
            if count >= n:
                break
            v = f"v{count}"
            count += 1
            edges.append((u, v))
            wsq[v] = w * w
            pattern[v] = tuple(weights) if rng.random() < echo else None
            order.append(v)
            queue.append(v)
    tree = DirectedTree("v0", edges)
    return WeightedShift(tree, wsq, name="random")


def random_scope(rng, s: WeightedShift, keep: float = 0.15) -> list:
    """Vertices with an equal-norm child, plus a random share ``keep`` of the rest."""
    out = []
    for u in s.tree.vertices:
        if s.chi_plus(u) or rng.random() < keep:
            out.append(u)
    return out


def corpus(seed: int = 0, size: int = 200, max_vertices: int = 25) -> list[WeightedShift]:
    """The seeded random corpus: half plain draws, half with echoed weights."""
    rng = np.random.default_rng(seed)
    return [
        random_shift(rng, max_vertices, echo=0.0 if i % 2 == 0 else 0.7) for i in range(size)
    ]


# -- dispatcher ----------------------------------------------------------------------------


def make_family(family: str, depth: int, **kw) -> WeightedShift:
    """Build a family by name: eunb, fig1, fig2, fig3, path, qpath."""
    if family == "eunb":
        return gen_eunb(depth)
    if family == "fig1":
        if "c" in kw:
            return fig1_for_constant(kw["c"], depth)
        return gen_fig1(kw["alpha_sq"], kw["q_sq"], depth)
    if family == "fig2":
        return gen_fig2(kw.get("alpha_sq", Fraction(1, 4)), depth)
    if family == "fig3":
        return gen_fig3(kw.get("alpha_sq", Fraction(1, 4)), kw.get("gamma_sq", Fraction(1)), depth)
    if family == "path":
        return gen_classical_path(kw.get("weights", [1] * depth), depth)
    if family == "qpath":
        return gen_q_path(kw.get("q", 2), depth)
    raise ParameterError(f"unknown family {family!r}")
