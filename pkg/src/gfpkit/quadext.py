"""Arithmetic in Q(x)[s]/(s^2 - delta).

An element ``u + v*s`` is stored together with the ``delta`` it lives over;
mixing elements over different deltas raises :class:`DeltaMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polyring as pr
from .polyring import Poly


class DeltaMismatch(ValueError):
    pass


class NonPolynomialRadicand(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadElem:
    u: Poly
    v: Poly
    delta: Poly

    @classmethod
    def of(cls, p, delta: Poly) -> "QuadElem":
        if not isinstance(p, Poly):
            p = Poly.const(p)
        return cls(p, pr.ZERO, delta)

    @property
    def is_rational(self) -> bool:
        """True when the s-component vanishes."""
        return self.v.is_zero()

    def __add__(self, other: "QuadElem") -> "QuadElem":
        return qadd(self, other)

    def __sub__(self, other: "QuadElem") -> "QuadElem":
        return qsub(self, other)

    def __mul__(self, other: "QuadElem") -> "QuadElem":
        return qmul(self, other)

    def __neg__(self) -> "QuadElem":
        return QuadElem(-self.u, -self.v, self.delta)

    def __pow__(self, n: int) -> "QuadElem":
        return qpow(self, n)

    def __str__(self):
        return format_quad(self)


def _check(e1: QuadElem, e2: QuadElem) -> None:
    if e1.delta is not e2.delta and e1.delta != e2.delta:
        raise DeltaMismatch(f"cannot combine elements over s^2 = {e1.delta} and s^2 = {e2.delta}")


def qadd(e1: QuadElem, e2: QuadElem) -> QuadElem:
    _check(e1, e2)
    return QuadElem(e1.u + e2.u, e1.v + e2.v, e1.delta)


def qsub(e1: QuadElem, e2: QuadElem) -> QuadElem:
    _check(e1, e2)
    return QuadElem(e1.u - e2.u, e1.v - e2.v, e1.delta)


def qmul(e1: QuadElem, e2: QuadElem) -> QuadElem:
    _check(e1, e2)
    u1, v1, u2, v2 = e1.u, e1.v, e2.u, e2.v
    if not v1 and not v2:
        return QuadElem(pr.mul(u1, u2), pr.ZERO, e1.delta)
    u = pr.add(pr.mul(u1, u2), pr.mul(pr.mul(v1, v2), e1.delta))
    v = pr.add(pr.mul(u1, v2), pr.mul(u2, v1))
    return QuadElem(u, v, e1.delta)


def qpow(e: QuadElem, n: int) -> QuadElem:
    if n < 0:
        raise ValueError("negative exponent")
    result = QuadElem(pr.ONE, pr.ZERO, e.delta)
    base = e
    while n:
        if n & 1:
            result = qmul(result, base)
        n >>= 1
        if n:
            base = qmul(base, base)
    return result


def conj(e: QuadElem) -> QuadElem:
    return QuadElem(e.u, -e.v, e.delta)


def norm(e: QuadElem) -> Poly:
    """e * conj(e), an element of Q[x]."""
    return pr.add(pr.mul(e.u, e.u), -pr.mul(pr.mul(e.v, e.v), e.delta))


def qdiv(e1: QuadElem, e2: QuadElem) -> QuadElem:
    """Exact quotient; raises NotDivisible when it leaves Q[x][s]."""
    _check(e1, e2)
    if e2.v.is_zero():
        den = e2.u
        num = e1
    else:
        den = norm(e2)
        num = qmul(e1, conj(e2))
    if den.is_zero():
        raise pr.DivisionByZero(f"division by {format_quad(e2)}")
    return QuadElem(pr.exact_div(num.u, den), pr.exact_div(num.v, den), e1.delta)


def qsqrt(e: QuadElem) -> QuadElem:
    """Square root of an element with zero s-part.

    Tries a polynomial root first (positive leading coefficient); failing
    that, a root of the form ``r*s`` when ``e/delta`` is a perfect square.
    """
    if not e.v.is_zero():
        raise NonPolynomialRadicand(f"radicand {format_quad(e)} has a nonzero s-part")
    try:
        return QuadElem(pr.poly_sqrt(e.u), pr.ZERO, e.delta)
    except pr.NotASquare:
        pass
    try:
        inner = pr.exact_div(e.u, e.delta)
    except pr.NotDivisible:
        raise pr.NotASquare(f"{e.u} is not a square in Q[x] or in Q[x]*s") from None
    return QuadElem(pr.ZERO, pr.poly_sqrt(inner), e.delta)


def format_quad(e: QuadElem) -> str:
    if e.v.is_zero():
        return str(e.u)
    if e.u.is_zero():
        return f"({e.v})*s"
    return f"{e.u} + ({e.v})*s"


def roots_of(family) -> tuple[QuadElem, QuadElem]:
    """Binet roots a = (d + s)/2 and b = (d - s)/2 of z^2 - d*z - g.

    ``family`` is anything with polynomial ``d`` and ``g`` attributes; the
    roots live over s^2 = d^2 + 4g, so a - b = s.
    """
    d, g = family.d, family.g
    delta = getattr(family, "delta", None) or d * d + 4 * g
    half = Fraction(1, 2)
    a = QuadElem(pr.scale(d, half), Poly.const(half), delta)
    return a, conj(a)
