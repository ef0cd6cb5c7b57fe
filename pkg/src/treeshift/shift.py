"""Weighted shifts on finite directed trees.

A weighted shift sends ``e_u`` to ``sum(lambda_v e_v for v in children(u))``.
Every criterion in this package depends on the weights only through
``|lambda_v|**2``, so a shift stores squared moduli.  Exactness is kept on
squared quantities: pass weights as ``Fraction`` (or squares of sympy
algebraic numbers) and norm comparisons are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import sympy

from . import scalar
from .scalar import EPS, Scalar
from .tree import DirectedTree, TreeError, Vertex

FiniteVector = Mapping  # vertex -> amplitude, finitely supported


def basis(u: Vertex) -> dict:
    """The basis vector ``e_u``."""
    return {u: Fraction(1)}


class WeightedShift:
    """A directed tree with a nonnegative weight on every non-root vertex.

    Parameters
    ----------
    tree : DirectedTree
    weight_sq : mapping non-root vertex -> squared weight.  Missing vertices
        get weight 0.
    frontier : vertices whose children were cut away by truncation.  Their
        cached norms are not the norms of the untruncated operator.
    norm_sq_oracle : optional mapping vertex -> squared norm of ``S e_u`` in
        the untruncated operator, used in place of the cache for frontier
        vertices.
    unbounded_family : set by generators whose norm sequence grows without
        bound as the truncation depth increases.
    eps : relative tolerance for float-mode comparisons.

    Use :meth:`from_weights` to build from (possibly complex) weights.
    """

    def __init__(
        self,
        tree: DirectedTree,
        weight_sq: Mapping[Vertex, object],
        *,
        frontier: Iterable[Vertex] = (),
        norm_sq_oracle: Mapping[Vertex, object] | None = None,
        unbounded_family: bool | None = None,
        eps: float = EPS,
        name: str | None = None,
    ):
        extra = set(weight_sq) - set(tree.non_root)
        if extra:
            raise TreeError(f"weights given for non-edges: {sorted(map(repr, extra))[:5]}")
        wsq = {}
        for v in tree.non_root:
            x = scalar.normalize(weight_sq.get(v, Fraction(0)))
            if scalar.sign(x, eps) < 0:
                raise ValueError(f"negative squared weight at {v!r}")
            wsq[v] = x
        exact = all(scalar.is_exact(x) for x in wsq.values())
        if not exact:
            wsq = {v: float(x) for v, x in wsq.items()}

        self.tree = tree
        self.exact = exact
        self.eps = eps
        self.name = name
        self._wsq = wsq
        self._normsq = {}
        for u in tree.vertices:
            total = Fraction(0) if exact else 0.0
            for v in tree.children(u):
                total = total + wsq[v]
            self._normsq[u] = scalar.normalize(total) if exact else total
        self.frontier = frozenset(frontier)
        for u in self.frontier:
            tree.index(u)
        self.norm_sq_oracle = None
        if norm_sq_oracle is not None:
            self.norm_sq_oracle = {}
            for u, x in norm_sq_oracle.items():
                tree.index(u)
                x = scalar.normalize(x)
                self.norm_sq_oracle[u] = x if exact else float(x)
        self.unbounded_family = unbounded_family

    @classmethod
    def from_weights(cls, tree: DirectedTree, weights: Mapping[Vertex, object], **kw):
        """Build from weights ``lambda_v``; complex weights are reduced to moduli."""
        wsq = {}
        for v, w in weights.items():
            if isinstance(w, complex):
                wsq[v] = abs(w) ** 2
            elif isinstance(w, sympy.Expr):
                wsq[v] = sympy.Abs(w) ** 2
            else:
                w = scalar.normalize(w)
                wsq[v] = w * w
        return cls(tree, wsq, **kw)

    # -- weights and norms -------------------------------------------------

    def weight_sq(self, v: Vertex) -> Scalar:
        if v == self.tree.root:
            raise TreeError("the root carries no weight")
        self.tree.index(v)
        return self._wsq[v]

    def weight(self, v: Vertex) -> Scalar:
        return scalar.sqrt(self.weight_sq(v))

    def weight_float(self, v: Vertex) -> float:
        return float(self.weight_sq(v)) ** 0.5

    def vertex_norm_sq(self, u: Vertex) -> Scalar:
        """``||S e_u||**2``, the sum of squared child weights (0 at a leaf)."""
        self.tree.index(u)
        return self._normsq[u]

    def effective_norm_sq(self, u: Vertex) -> Scalar:
        """Norm used by the criteria: the oracle value on frontier vertices."""
        if u in self.frontier and self.norm_sq_oracle and u in self.norm_sq_oracle:
            return self.norm_sq_oracle[u]
        return self.vertex_norm_sq(u)

    def norm_known(self, u: Vertex) -> bool:
        """Whether ``effective_norm_sq(u)`` reflects the untruncated operator."""
        return u not in self.frontier or bool(
            self.norm_sq_oracle and u in self.norm_sq_oracle
        )

    def is_zero(self) -> bool:
        return all(scalar.is_zero(x, self.eps) for x in self._wsq.values())

    def _eq(self, a, b) -> bool:
        return scalar.equal(a, b, self.eps)

    def chi_eq(self, u: Vertex) -> list[Vertex]:
        """Children ``v`` of ``u`` with ``||S e_v|| == ||S e_u||``."""
        nu = self.effective_norm_sq(u)
        return [v for v in self.tree.children(u) if self._eq(self.effective_norm_sq(v), nu)]

    def chi_plus(self, u: Vertex) -> list[Vertex]:
        """Members of :meth:`chi_eq` carrying a nonzero weight."""
        return [v for v in self.chi_eq(u) if not scalar.is_zero(self._wsq[v], self.eps)]

    def norm_bound(self):
        """``max_u ||S e_u||`` over the finite tree."""
        best = max(self._normsq.values(), key=scalar.to_float)
        return scalar.sqrt(best)

    # -- action on finitely supported vectors ------------------------------

    def apply(self, f: FiniteVector) -> dict:
        """``(S f)(v) = lambda_v f(parent(v))``; zero entries are omitted."""
        g = {}
        for u, a in f.items():
            if a == 0:
                continue
            for v in self.tree.children(u):
                w = self.weight(v)
                if w == 0:
                    continue
                if isinstance(a, (complex, float)):
                    g[v] = a * float(w)
                elif isinstance(w, sympy.Expr):
                    g[v] = scalar.normalize(w * a)
                else:
                    g[v] = w * a
        return g

    def scaled(self, t) -> "WeightedShift":
        """Multiply every weight by ``t`` (squares by ``t**2``)."""
        t2 = scalar.normalize(t) ** 2
        return WeightedShift(
            self.tree,
            {v: x * t2 for v, x in self._wsq.items()},
            frontier=self.frontier,
            norm_sq_oracle=None
            if self.norm_sq_oracle is None
            else {u: x * t2 for u, x in self.norm_sq_oracle.items()},
            eps=self.eps,
        )

    def to_float(self) -> "WeightedShift":
        """A copy in float mode."""
        return WeightedShift(
            self.tree,
            {v: float(x) for v, x in self._wsq.items()},
            frontier=self.frontier,
            norm_sq_oracle=None
            if self.norm_sq_oracle is None
            else {u: float(x) for u, x in self.norm_sq_oracle.items()},
            unbounded_family=self.unbounded_family,
            eps=self.eps,
            name=self.name,
        )

    def weights_sq(self) -> dict:
        return dict(self._wsq)

    def __eq__(self, other):
        if not isinstance(other, WeightedShift):
            return NotImplemented
        return self.tree == other.tree and self._wsq == other._wsq

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        mode = "exact" if self.exact else "float"
        return f"<WeightedShift{label} |V|={len(self.tree)} {mode}>"


def vector_norm_sq(f: FiniteVector):
    total = Fraction(0)
    for a in f.values():
        if isinstance(a, complex):
            total = total + abs(a) ** 2
        else:
            total = total + a * a
    return total


def vertex_norm_sq(s: WeightedShift, u: Vertex):
    return s.vertex_norm_sq(u)


def apply(s: WeightedShift, f: FiniteVector) -> dict:
    return s.apply(f)


def chi_eq(s: WeightedShift, u: Vertex) -> list:
    return s.chi_eq(u)


def chi_plus(s: WeightedShift, u: Vertex) -> list:
    return s.chi_plus(u)


def norm_bound(s: WeightedShift):
    return s.norm_bound()
