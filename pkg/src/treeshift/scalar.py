"""Exact and floating-point scalars.

Classification works on squared quantities (squared weights, squared vertex
norms).  Three representations are accepted:

* ``fractions.Fraction`` -- the default exact mode;
* sympy expressions -- exact algebraic values such as ``(1/sqrt(3) + 2)**2``,
  needed when a squared weight is irrational;
* ``float`` -- approximate mode, compared with a relative tolerance.

Every helper here dispatches on those three types so that the rest of the
package can stay agnostic of the mode in use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

import sympy

Scalar = Union[Fraction, float, sympy.Expr]

#: default relative tolerance for float mode
EPS = 1e-9

INF = math.inf


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int, sympy.Expr)) and not (
        isinstance(x, sympy.Float)
    )


def _sympy_normal(x: sympy.Expr):
    x = sympy.expand(sympy.radsimp(sympy.expand(x)))
    if x.is_Rational:
        return Fraction(int(x.p), int(x.q))
    return x


def normalize(x) -> Scalar:
    """Canonical form: int/str -> Fraction, rational sympy -> Fraction."""
    if isinstance(x, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return x
    if isinstance(x, str):
        return parse(x)
    if isinstance(x, sympy.Float):
        return float(x)
    if isinstance(x, sympy.Expr):
        return _sympy_normal(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    try:
        return float(x)
    except TypeError:
        raise TypeError(f"unsupported scalar {x!r}") from None


def parse(text: str) -> Scalar:
    """Parse ``"p/q"`` or an integer exactly; anything else as a float."""
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"malformed number {text!r}") from None


def to_float(x) -> float:
    if x == INF:
        return INF
    return float(x)


def to_sympy(x) -> sympy.Expr:
    if isinstance(x, Fraction):
        return sympy.Rational(x.numerator, x.denominator)
    return sympy.sympify(x)


def sign(x, eps: float = EPS, scale=1.0) -> int:
    """Sign of ``x``; floats within ``eps * scale`` of zero count as zero."""
    if isinstance(x, float):
        if abs(x) <= eps * max(1.0, abs(float(scale))):
            return 0
        return 1 if x > 0 else -1
    if isinstance(x, (Fraction, int)):
        return (x > 0) - (x < 0)
    x = _sympy_normal(x)
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    v = x.evalf(60)
    return 1 if v > 0 else -1


def is_zero(x, eps: float = EPS) -> bool:
    return sign(x, eps) == 0


def compare(a, b, eps: float = EPS) -> int:
    """-1, 0, 1 for a < b, a == b, a > b.  Floats use relative tolerance."""
    if a == INF or b == INF:
        if a == b:
            return 0
        return 1 if a == INF else -1
    if isinstance(a, float) or isinstance(b, float):
        fa, fb = float(a), float(b)
        return sign(fa - fb, eps, max(abs(fa), abs(fb)))
    return sign(a - b)


def equal(a, b, eps: float = EPS) -> bool:
    return compare(a, b, eps) == 0


def ratio(num, den):
    """``num / den`` kept exact where possible."""
    if isinstance(num, float) or isinstance(den, float):
        return float(num) / float(den)
    q = num / den
    return normalize(q) if isinstance(q, sympy.Expr) else q


def sqrt(x):
    """Square root, exact when the result is rational or x is symbolic."""
    if isinstance(x, float):
        return math.sqrt(x)
    if isinstance(x, (Fraction, int)):
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative scalar")
        n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
        if n * n == x.numerator and d * d == x.denominator:
            return Fraction(n, d)
        return normalize(sympy.sqrt(to_sympy(x)))
    return normalize(sympy.sqrt(x))


def power(x, alpha):
    """``x ** alpha`` for x >= 0 and rational or float alpha, exact if possible."""
    if isinstance(x, float) or isinstance(alpha, float):
        return float(x) ** float(alpha)
    alpha = Fraction(alpha)
    if alpha.denominator == 1 and isinstance(x, (Fraction, int)):
        return Fraction(x) ** alpha.numerator
    if x == 0:
        return Fraction(0)
    return normalize(to_sympy(x) ** sympy.Rational(alpha.numerator, alpha.denominator))


def fmt(x) -> str:
    """Lossless text: ``"p/q"`` for rationals, ``"inf"``, 17 digits for floats."""
    if x == INF:
        return "inf"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)
