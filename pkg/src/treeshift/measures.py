"""Finite atomic measures on the half line.

Atoms are stored by their *squared* location.  Locations produced by a
weighted shift are vertex norms, which are square roots of rationals; keying
by the square keeps them exact.  Borel sets are subsets of the atom set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import scalar
from .scalar import EPS, INF
from .shift import FiniteVector, WeightedShift


def _abs_sq(a):
    if isinstance(a, complex):
        return abs(a) ** 2
    return a * a


class AtomicMeasure:
    """A finite positive measure ``sum_k m_k delta_{t_k}``.

    Parameters
    ----------
    masses : mapping squared location ``t**2`` -> mass.  Nonpositive masses
        are dropped.  In float mode, locations within ``eps`` (relative) are
        merged and masses at most ``mass_tol`` are dropped.
    """

    def __init__(self, masses=None, *, eps: float = EPS, mass_tol: float = 0.0):
        self.eps = eps
        atoms: dict = {}
        for loc, m in dict(masses or {}).items():
            loc, m = scalar.normalize(loc), scalar.normalize(m)
            key = self._find(atoms, loc)
            if key is None:
                atoms[loc] = m
            else:
                atoms[key] = atoms[key] + m
        self._atoms = {}
        for loc, m in atoms.items():
            if isinstance(m, float):
                if m > mass_tol:
                    self._atoms[loc] = m
            elif scalar.sign(m) > 0:
                self._atoms[loc] = scalar.normalize(m)

    def _find(self, atoms, loc):
        if loc in atoms:
            return loc
        if isinstance(loc, float) or any(isinstance(k, float) for k in atoms):
            for k in atoms:
                if scalar.equal(k, loc, self.eps):
                    return k
        elif not isinstance(loc, Fraction):
            for k in atoms:
                if not isinstance(k, Fraction) and scalar.equal(k, loc):
                    return k
        return None

    @classmethod
    def from_locations(cls, pairs: Iterable[tuple[object, object]], **kw) -> "AtomicMeasure":
        """Build from ``(t, mass)`` pairs with unsquared locations ``t >= 0``."""
        masses: dict = {}
        for t, m in pairs:
            t = scalar.normalize(t)
            key = t * t
            masses[key] = masses.get(key, 0) + m
        return cls(masses, **kw)

    @property
    def masses(self) -> dict:
        """Squared location -> mass."""
        return dict(self._atoms)

    def atoms(self) -> list[tuple[object, object]]:
        """``(t, mass)`` pairs sorted by location."""
        items = sorted(self._atoms.items(), key=lambda kv: scalar.to_float(kv[0]))
        return [(scalar.sqrt(k), m) for k, m in items]

    def support(self) -> list:
        return [t for t, _ in self.atoms()]

    def mass_at(self, t) -> object:
        """Mass of the singleton ``{t}``."""
        t = scalar.normalize(t)
        key = self._find(self._atoms, t * t)
        return Fraction(0) if key is None else self._atoms[key]

    def measure(self, subset: Iterable) -> object:
        """Mass of a finite set of (unsquared) locations."""
        total = Fraction(0)
        for t in set(subset):
            total = total + self.mass_at(t)
        return total

    def total_mass(self):
        total = Fraction(0)
        for m in self._atoms.values():
            total = total + m
        return scalar.normalize(total) if not isinstance(total, float) else total

    def is_zero(self) -> bool:
        return not self._atoms

    def scaled(self, c) -> "AtomicMeasure":
        return AtomicMeasure({k: m * c for k, m in self._atoms.items()}, eps=self.eps)

    def __len__(self):
        return len(self._atoms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.equals(other)

    def equals(self, other: "AtomicMeasure", tol: float | None = None) -> bool:
        """Atom-by-atom equality; ``tol`` is an absolute tolerance on masses."""
        if len(self) != len(other):
            return False
        for k, m in self._atoms.items():
            key = other._find(other._atoms, k)
            if key is None:
                return False
            n = other._atoms[key]
            if tol is None and not (isinstance(m, float) or isinstance(n, float)):
                if scalar.sign(m - n) != 0:
                    return False
            elif abs(float(m) - float(n)) > (tol if tol is not None else self.eps * max(1.0, abs(float(m)))):
                return False
        return True

    def __repr__(self):
        body = ", ".join(f"({scalar.fmt(t)}, {scalar.fmt(m)})" for t, m in self.atoms())
        return f"AtomicMeasure[{body}]"


@dataclass(frozen=True)
class FunctionOnAtoms:
    """A Borel map of the half line, evaluated only at atom locations.

    ``on_squares`` maps ``t**2`` to ``phi(t)**2`` so that exact inputs give
    exact outputs; ``psi_q`` for instance is ``s -> q*s``.
    """

    name: str
    on_squares: Callable = field(compare=False)

    def __call__(self, t):
        return scalar.sqrt(self.on_squares(scalar.normalize(t) ** 2))

    def sq(self, t_sq):
        return self.on_squares(t_sq)

    @classmethod
    def from_callable(cls, func: Callable[[float], float], name: str = "custom"):
        return cls(name, lambda s: float(func(math.sqrt(float(s)))) ** 2)


IDENTITY = FunctionOnAtoms("id", lambda s: s)
COLLAPSE = FunctionOnAtoms("zero", lambda s: Fraction(0) if not isinstance(s, float) else 0.0)


def psi_q(q) -> FunctionOnAtoms:
    """``x -> sqrt(q) * x``."""
    q = scalar.normalize(q)
    if scalar.sign(q) <= 0:
        raise ValueError("psi_q needs q > 0")
    return FunctionOnAtoms(f"q:{scalar.fmt(q)}", lambda s: scalar.normalize(q * s))


def parse_function(text: str) -> FunctionOnAtoms:
    """``"id"``, ``"zero"`` or ``"q:VALUE"``."""
    if text == "id":
        return IDENTITY
    if text in ("zero", "0"):
        return COLLAPSE
    if text.startswith("q:"):
        return psi_q(scalar.parse(text[2:]))
    raise ValueError(f"unknown function {text!r}; expected id, zero or q:VALUE")


def modulus_measure(s: WeightedShift, f: FiniteVector, alpha=1) -> AtomicMeasure:
    """``sigma -> <E(sigma)|S| f, |S| f>`` with ``E`` the spectral measure of ``|S|**alpha``.

    The atom at ``||S e_u||**alpha`` collects ``||S e_u||**2 |f(u)|**2``.
    """
    alpha = scalar.normalize(alpha)
    if scalar.sign(alpha) <= 0:
        raise ValueError("alpha must be positive")
    masses: dict = {}
    for u, a in f.items():
        nsq = s.effective_norm_sq(u)
        key = nsq if alpha == 1 else scalar.power(nsq, alpha)
        masses[key] = masses.get(key, 0) + nsq * _abs_sq(a)
    return AtomicMeasure(masses, eps=s.eps)


def image_measure(s: WeightedShift, f: FiniteVector) -> AtomicMeasure:
    """``sigma -> <E(sigma) S f, S f>``.

    The atom at ``||S e_v||`` collects ``|lambda_v|**2 |f(parent v)|**2``.
    """
    masses: dict = {}
    for u, a in f.items():
        w = _abs_sq(a)
        for v in s.tree.children(u):
            key = s.effective_norm_sq(v)
            masses[key] = masses.get(key, 0) + s.weight_sq(v) * w
    return AtomicMeasure(masses, eps=s.eps)


def absolutely_continuous(mu: AtomicMeasure, nu: AtomicMeasure) -> bool:
    """``mu << nu``: every atom of ``mu`` is an atom of ``nu``."""
    return all(nu._find(nu._atoms, k) is not None for k in mu._atoms)


def rn_derivative_sup(mu: AtomicMeasure, nu: AtomicMeasure):
    """Essential sup of ``d mu / d nu``, or ``inf`` when ``mu`` is not ``<< nu``."""
    best = Fraction(0)
    for k, m in mu._atoms.items():
        key = nu._find(nu._atoms, k)
        if key is None:
            return INF
        r = scalar.ratio(m, nu._atoms[key])
        if scalar.compare(r, best) > 0:
            best = r
    return best


def pushforward(mu: AtomicMeasure, phi: FunctionOnAtoms) -> AtomicMeasure:
    """``sigma -> mu(phi^{-1}(sigma))``."""
    masses: dict = {}
    for k, m in mu._atoms.items():
        key = scalar.normalize(phi.sq(k))
        masses[key] = masses.get(key, 0) + m
    return AtomicMeasure(masses, eps=mu.eps)


def dominated(mu: AtomicMeasure, nu: AtomicMeasure, c) -> bool:
    """``mu(sigma) <= c nu(sigma)`` for every set of atoms."""
    for k, m in mu._atoms.items():
        key = nu._find(nu._atoms, k)
        n = Fraction(0) if key is None else nu._atoms[key]
        if scalar.compare(m, c * n, mu.eps) > 0:
            return False
    return True
