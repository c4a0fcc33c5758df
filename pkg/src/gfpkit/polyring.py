"""Dense univariate polynomials over the rationals.

Coefficients are stored lowest degree first.  Integral coefficients are kept
as plain ``int`` and everything else as :class:`fractions.Fraction`, so the
common integer case stays on Python's fast bigint path while every value
remains an exact rational.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Coeff = Union[int, Fraction]


class PolyError(ArithmeticError):
    pass


class NotDivisible(PolyError):
    pass


class DivisionByZero(PolyError, ZeroDivisionError):
    pass


class NotASquare(PolyError):
    pass


class BothZero(PolyError):
    pass


def _norm(c) -> Coeff:
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, Rational):
        return _norm(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return _norm(Fraction(c))
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


def _trim(cs: list) -> tuple:
    n = len(cs)
    while n and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


class Poly:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``x**i``.

    The zero polynomial has an empty coefficient tuple and ``degree`` None.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([_norm(c) for c in coeffs]))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        # trusted constructor: coeffs already normalized and trimmed
        p = object.__new__(cls)
        object.__setattr__(p, "coeffs", coeffs)
        object.__setattr__(p, "_hash", None)
        return p

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly._raw, (self.coeffs,))

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def lead(self) -> Coeff:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def const_value(self) -> Coeff:
        if len(self.coeffs) > 1:
            raise ValueError(f"{self} is not constant")
        return self.coeffs[0] if self.coeffs else 0

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return add(self, -_coerce(other))

    def __rsub__(self, other):
        return add(_coerce(other), -self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return pow(self, k)

    def __call__(self, x0):
        return evaluate(self, x0)


ZERO = Poly._raw(())
ONE = Poly._raw((1,))
X = Poly._raw((0, 1))


def _coerce(v) -> Poly:
    if isinstance(v, Poly):
        return v
    return Poly.const(v)


def add(p: Poly, q: Poly) -> Poly:
    a, b = p.coeffs, q.coeffs
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = _norm(out[i] + c)
    return Poly._raw(_trim(out))


def scale(p: Poly, c) -> Poly:
    c = _norm(c)
    if c == 0:
        return ZERO
    return Poly._raw(tuple(_norm(a * c) for a in p.coeffs))


def mul(p: Poly, q: Poly) -> Poly:
    a, b = p.coeffs, q.coeffs
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return scale(q, a[0])
    if len(b) == 1:
        return scale(p, b[0])
    if all(type(c) is int for c in a) and all(type(c) is int for c in b):
        return Poly._raw(_int_convolve(a, b))
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return Poly._raw(_trim([_norm(c) for c in out]))


def _int_convolve(a: tuple, b: tuple) -> tuple:
    # Kronecker substitution: pack both operands into single bigints so the
    # product runs through CPython's Karatsuba multiply.
    bound = max(abs(c) for c in a) * max(abs(c) for c in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)

    def pack(cs):
        v = 0
        for c in reversed(cs):
            v = (v << bits) + c
        return v

    prod = pack(a) * pack(b)
    out = []
    for _ in range(len(a) + len(b) - 1):
        chunk = prod & mask
        if chunk >= half:
            chunk -= 1 << bits
        out.append(chunk)
        prod = (prod - chunk) >> bits
    return _trim(out)


def pow(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative exponent")
    result, base = ONE, p
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if q.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    rem = list(p.coeffs)
    dq = len(q.coeffs) - 1
    lead = q.coeffs[-1]
    if len(rem) <= dq:
        return ZERO, p
    quot = [0] * (len(rem) - dq)
    for i in range(len(rem) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        if type(c) is int and type(lead) is int and c % lead == 0:
            f = c // lead
        else:
            f = _norm(Fraction(c) / lead)
        quot[i - dq] = f
        for j, qc in enumerate(q.coeffs):
            rem[i - dq + j] = _norm(rem[i - dq + j] - f * qc)
    return Poly._raw(_trim(quot)), Poly._raw(_trim(rem[:dq]))


def exact_div(p: Poly, q: Poly) -> Poly:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise NotDivisible(f"({p}) is not divisible by ({q}); remainder {rem}")
    return quot


def evaluate(p: Poly, x0) -> Coeff:
    x0 = _norm(x0)
    acc: Coeff = 0
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
    return _norm(acc)


def _rational_sqrt(c: Coeff) -> Coeff | None:
    if c < 0:
        return None
    f = Fraction(c)
    rn, rd = math.isqrt(f.numerator), math.isqrt(f.denominator)
    if rn * rn != f.numerator or rd * rd != f.denominator:
        return None
    return _norm(Fraction(rn, rd))


def poly_sqrt(p: Poly) -> Poly:
    """Square root with positive leading coefficient, or NotASquare."""
    if p.is_zero():
        return ZERO
    deg = p.degree
    if deg % 2:
        raise NotASquare(f"odd degree: {p}")
    k = deg // 2
    top = _rational_sqrt(p.lead)
    if top is None:
        raise NotASquare(f"leading coefficient {p.lead} is not a rational square")
    r = [0] * (k + 1)
    r[k] = top
    two_top = 2 * top
    for i in range(1, k + 1):
        # coefficient of x^(2k-i): 2*r[k]*r[k-i] + sum of already-known cross terms
        acc = p.coeffs[deg - i]
        for j in range(k - i + 1, k):
            l = deg - i - j
            if k - i < l <= k:
                acc -= r[j] * r[l]
        r[k - i] = _norm(Fraction(acc) / two_top)
    root = Poly(r)
    if mul(root, root) != p:
        raise NotASquare(f"{p} is not a perfect square")
    return root


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd via the Euclidean algorithm over the rationals."""
    if p.is_zero() and q.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = p, q
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return scale(a, Fraction(1) / Fraction(a.lead))


# -- text format -------------------------------------------------------------

def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def format_poly(p: Poly, var: str = "x") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = _fmt_coeff(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
        if not parts:
            parts.append(body if sign == "+" else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*?\s*(?P<xa>x)(?:\s*\^\s*(?P<ea>\d+))?)?
        | (?P<xb>x)(?:\s*\^\s*(?P<eb>\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str, var: str = "x") -> Poly:
    """Parse the textual format produced by :func:`format_poly`.

    Accepts integer and rational coefficients, with or without ``*`` before
    the variable (``1/2*x^3``, ``3x``, ``-x^2 + 4``).
    """
    src = text.replace(var, "x") if var != "x" else text
    pos, first = 0, True
    acc: dict[int, Fraction] = {}
    if not src.strip():
        raise ValueError("empty polynomial")
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or (not first and not m.group("sign")):
            raise ValueError(f"cannot parse polynomial {text!r} at column {pos + 1}")
        first = False
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = Fraction(m.group("coef"))
            if m.group("xa"):
                exp = int(m.group("ea") or 1)
            else:
                exp = 0
        else:
            coef = Fraction(1)
            exp = int(m.group("eb") or 1)
        acc[exp] = acc.get(exp, Fraction(0)) + sign * coef
        pos = m.end()
    top = max(acc)
    return Poly([acc.get(i, 0) for i in range(top + 1)])
