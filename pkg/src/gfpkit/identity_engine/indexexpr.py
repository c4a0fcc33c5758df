"""Integer polynomial forms over the index variables.

Subscripts such as ``2n+1`` or ``j*(k+u)+r+v`` and exponents such as
``n-m`` are all represented by :class:`IndexExpr`.  Products of variables are
allowed (``j*k``), so the form is a polynomial with integer coefficients
rather than strictly linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

INDEX_VARS = ("n", "m", "r", "s", "t", "i", "j", "k", "u", "v")
# alpha may appear in constraints only; it is bound from the family pair.
PSEUDO_VARS = ("alpha",)
_ORDER = {v: i for i, v in enumerate(INDEX_VARS + PSEUDO_VARS)}

Monomial = tuple  # sorted tuple of variable names, () for the constant term


def _mono_key(mono: Monomial):
    return (-len(mono), tuple(_ORDER.get(v, len(_ORDER)) for v in mono), mono)


@dataclass(frozen=True)
class IndexExpr:
    terms: tuple  # ((monomial, coeff), ...) canonical: sorted, no zero coeffs

    @staticmethod
    def _make(acc: dict) -> "IndexExpr":
        items = [(mono, c) for mono, c in acc.items() if c]
        items.sort(key=lambda it: _mono_key(it[0]))
        return IndexExpr(tuple(items))

    @classmethod
    def const(cls, c: int) -> "IndexExpr":
        return cls._make({(): c})

    @classmethod
    def var(cls, name: str) -> "IndexExpr":
        return cls._make({(name,): 1})

    def __add__(self, other: "IndexExpr") -> "IndexExpr":
        acc = dict(self.terms)
        for mono, c in other.terms:
            acc[mono] = acc.get(mono, 0) + c
        return IndexExpr._make(acc)

    def __neg__(self) -> "IndexExpr":
        return IndexExpr(tuple((mono, -c) for mono, c in self.terms))

    def __sub__(self, other: "IndexExpr") -> "IndexExpr":
        return self + (-other)

    def __mul__(self, other: "IndexExpr") -> "IndexExpr":
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                mono = tuple(sorted(m1 + m2, key=lambda v: (_ORDER.get(v, len(_ORDER)), v)))
                acc[mono] = acc.get(mono, 0) + c1 * c2
        return IndexExpr._make(acc)

    @property
    def variables(self) -> frozenset:
        return frozenset(v for mono, _ in self.terms for v in mono)

    def is_const(self) -> bool:
        return all(not mono for mono, _ in self.terms)

    @property
    def value(self) -> int:
        if not self.is_const():
            raise ValueError(f"{self} is not constant")
        return self.terms[0][1] if self.terms else 0

    def evaluate(self, env: Mapping[str, int]) -> int:
        total = 0
        for mono, c in self.terms:
            for v in mono:
                c *= env[v]
            total += c
        return total

    def substitute(self, env: Mapping[str, int]) -> "IndexExpr":
        acc: dict = {}
        for mono, c in self.terms:
            rest = []
            for v in mono:
                if v in env:
                    c *= env[v]
                else:
                    rest.append(v)
            key = tuple(rest)
            acc[key] = acc.get(key, 0) + c
        return IndexExpr._make(acc)

    def linear_coeff(self, name: str) -> int | None:
        """Coefficient of ``name`` if it occurs only linearly, else None."""
        coeff = 0
        for mono, c in self.terms:
            if name in mono:
                if mono != (name,):
                    return None
                coeff = c
        return coeff

    def is_simple(self) -> bool:
        """A nonnegative integer literal or a bare variable (prints without parens)."""
        if self.is_const():
            return self.value >= 0
        return len(self.terms) == 1 and self.terms[0][1] == 1 and len(self.terms[0][0]) == 1

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.terms:
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = "*".join(mono)
            else:
                body = f"{mag}*" + "*".join(mono)
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(("+ " if c > 0 else "- ") + body)
        return " ".join(out)

    def __repr__(self):
        return f"IndexExpr({str(self)!r})"
