"""Per-vertex verdicts for weighted shifts on directed trees.

Each test here reads a property of the operator off the vertex norms
``||S e_u||`` and the weights of the children of ``u``:

* quasinormal: every child with a nonzero weight has the norm of its parent;
* weakly quasinormal with constant ``c``:
  ``||S e_u||**2 <= c * sum(|lambda_v|**2 for v in chi_eq(u))``;
* the absolute-continuity condition: ``||S e_u|| != 0`` forces
  ``chi_plus(u)`` to be nonempty;
* hyponormal: ``sum(|lambda_v|**2 / ||S e_v||**2) <= 1`` over children with
  nonzero weight, none of which may have norm zero.

Verdicts are computed over a *scope*, a set of vertices.  For truncations of
infinite trees the natural scope is :func:`interior_vertices`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import scalar
from .measures import IDENTITY, FunctionOnAtoms
from .scalar import INF
from .shift import WeightedShift
from .tree import Vertex


def interior_vertices(s: WeightedShift) -> list[Vertex]:
    """Vertices whose criterion data is unaffected by truncation.

    ``u`` qualifies when its own children are present and every child's norm
    is known, either because the child's children are present or because the
    shift carries a norm oracle for it.  A shift with no frontier is its own
    interior.
    """
    out = []
    for u in s.tree.vertices:
        if u in s.frontier:
            continue
        if all(s.norm_known(v) for v in s.tree.children(u)):
            out.append(u)
    return out


def resolve_scope(s: WeightedShift, scope) -> list[Vertex]:
    """Accept ``"interior"``, ``"full"``, ``None`` (= interior) or a vertex set."""
    if scope is None or scope == "interior":
        return interior_vertices(s)
    if scope == "full":
        return list(s.tree.vertices)
    wanted = set(scope)
    for u in wanted:
        s.tree.index(u)
    return [u for u in s.tree.vertices if u in wanted]


def _sum(values, exact: bool):
    total = Fraction(0) if exact else 0.0
    for x in values:
        total = total + x
    return scalar.normalize(total) if exact else total


def _ratio_sup(s: WeightedShift, scope, denominator):
    """Shared sup loop: returns (value, witness vertex)."""
    best, witness = None, None
    for u in resolve_scope(s, scope):
        nsq = s.effective_norm_sq(u)
        if scalar.sign(nsq, s.eps) <= 0:
            continue
        den = denominator(u)
        if scalar.sign(den, s.eps) <= 0:
            return INF, u
        r = scalar.ratio(nsq, den)
        if best is None or scalar.compare(r, best, s.eps) > 0:
            best, witness = r, u
    if best is None:
        return (Fraction(0) if s.exact else 0.0), None
    return best, witness


def c_optimal_with_witness(s: WeightedShift, scope="interior"):
    return _ratio_sup(
        s, scope, lambda u: _sum((s.weight_sq(v) for v in s.chi_eq(u)), s.exact)
    )


def c_optimal(s: WeightedShift, scope="interior"):
    """Smallest ``c`` for which the weak quasinormality inequality holds on ``scope``.

    Returns ``inf`` when some vertex of positive norm has no weight on
    children of equal norm, and 0 for the zero shift.
    """
    return c_optimal_with_witness(s, scope)[0]


def generalized_c_optimal_with_witness(
    s: WeightedShift, phi: FunctionOnAtoms, psi: FunctionOnAtoms, scope="interior"
):
    def den(u):
        target = phi.sq(s.effective_norm_sq(u))
        return _sum(
            (
                s.weight_sq(v)
                for v in s.tree.children(u)
                if scalar.equal(psi.sq(s.effective_norm_sq(v)), target, s.eps)
            ),
            s.exact,
        )

    return _ratio_sup(s, scope, den)


def generalized_c_optimal(s: WeightedShift, phi: FunctionOnAtoms, psi: FunctionOnAtoms, scope="interior"):
    """Per-vertex constant for the measure inequality transported by ``phi`` and ``psi``.

    Children count toward the denominator at ``u`` when
    ``psi(||S e_v||) == phi(||S e_u||)``.  With both maps the identity this
    is exactly :func:`c_optimal`.
    """
    if phi is IDENTITY and psi is IDENTITY:
        return c_optimal(s, scope)
    return generalized_c_optimal_with_witness(s, phi, psi, scope)[0]


def is_quasinormal(s: WeightedShift, scope="interior"):
    """``(verdict, witness)``; the witness is the first offending ``(u, v)``."""
    for u in resolve_scope(s, scope):
        nu = s.effective_norm_sq(u)
        for v in s.tree.children(u):
            if scalar.is_zero(s.weight_sq(v), s.eps):
                continue
            if not scalar.equal(s.effective_norm_sq(v), nu, s.eps):
                return False, (u, v)
    return True, None


def abc3_holds(s: WeightedShift, scope="interior"):
    """``(verdict, witness)``: positive norm implies a nonzero-weight child of equal norm."""
    for u in resolve_scope(s, scope):
        if scalar.sign(s.effective_norm_sq(u), s.eps) > 0 and not s.chi_plus(u):
            return False, u
    return True, None


def hyponormal_sum(s: WeightedShift, u: Vertex):
    """``sum |lambda_v|**2 / ||S e_v||**2`` over nonzero-weight children, or ``inf``."""
    terms = []
    for v in s.tree.children(u):
        w = s.weight_sq(v)
        if scalar.is_zero(w, s.eps):
            continue
        nv = s.effective_norm_sq(v)
        if scalar.is_zero(nv, s.eps):
            return INF
        terms.append(scalar.ratio(w, nv))
    return _sum(terms, s.exact)


def is_hyponormal(s: WeightedShift, scope="interior"):
    """``(verdict, witness)`` with verdict ``True``, ``False`` or ``None`` (unknown).

    Unknown means the scope contains a vertex whose children's norms are not
    reliable (a truncation frontier without an oracle) and no violation was
    found elsewhere.  The witness is ``(u, sum)`` for a violation.
    """
    unknown = False
    for u in resolve_scope(s, scope):
        if not all(s.norm_known(v) for v in s.tree.children(u)) or u in s.frontier:
            unknown = True
            continue
        total = hyponormal_sum(s, u)
        if scalar.compare(total, Fraction(1), s.eps) > 0:
            return False, (u, total)
    return (None if unknown else True), None


def sleu_identity_check(s: WeightedShift, u: Vertex, alpha=1):
    """``|sum_v ||S e_v||**(2 alpha) |lambda_v|**2 - ||S e_u||**(2 (alpha+1))|``.

    Zero at every vertex of a quasinormal shift.  Exact for exact shifts and
    rational ``alpha``.
    """
    alpha = scalar.normalize(alpha)
    if scalar.sign(alpha) <= 0:
        raise ValueError("alpha must be positive")
    lhs = _sum(
        (
            scalar.power(s.effective_norm_sq(v), alpha) * s.weight_sq(v)
            for v in s.tree.children(u)
        ),
        s.exact,
    )
    rhs = scalar.power(s.effective_norm_sq(u), alpha + 1)
    diff = scalar.normalize(lhs - rhs) if s.exact else float(lhs) - float(rhs)
    return -diff if scalar.sign(diff) < 0 else diff


@dataclass
class ClassificationReport:
    quasinormal: bool
    weakly_quasinormal: bool
    c_opt: object
    abc3_holds: bool
    hyponormal: bool | None
    witnesses: dict = field(default_factory=dict)
    scope: list = field(default_factory=list)
    interior_only: bool = True
    boundary_vertices: list = field(default_factory=list)
    fragile: bool = False


def _fragile(s: WeightedShift, scope) -> bool:
    """Float mode only: two distinct squared norms closer than ten tolerances."""
    if s.exact:
        return False
    vals = sorted({float(s.effective_norm_sq(u)) for u in s.tree.vertices})
    for a, b in zip(vals, vals[1:]):
        if b - a < 10 * s.eps * max(1.0, b):
            return True
    return False


def classify(s: WeightedShift, scope="interior") -> ClassificationReport:
    """Run every verdict over ``scope`` and collect them in a report."""
    vertices = resolve_scope(s, scope)
    qn, qn_w = is_quasinormal(s, vertices)
    c, c_w = c_optimal_with_witness(s, vertices)
    abc, abc_w = abc3_holds(s, vertices)
    hyp, hyp_w = is_hyponormal(s, vertices)
    witnesses = {}
    if qn_w is not None:
        witnesses["quasinormal"] = qn_w
    if c_w is not None:
        witnesses["c_opt"] = c_w
    if abc_w is not None:
        witnesses["abc3"] = abc_w
    if hyp_w is not None:
        witnesses["hyponormal"] = hyp_w
    inside = set(vertices)
    return ClassificationReport(
        quasinormal=qn,
        weakly_quasinormal=c != INF,
        c_opt=c,
        abc3_holds=abc,
        hyponormal=hyp,
        witnesses=witnesses,
        scope=vertices,
        interior_only=scope is None or scope == "interior",
        boundary_vertices=[u for u in s.tree.vertices if u not in inside],
        fragile=_fragile(s, vertices),
    )


def scope_vertices(s: WeightedShift, scope: Iterable | str | None) -> list:
    return resolve_scope(s, scope)
