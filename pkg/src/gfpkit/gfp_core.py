"""Family registry, recurrence generation and the Binet closed forms."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from . import polyring as pr
from .polyring import Poly
from .quadext import QuadElem, conj, qadd, qmul, qpow, qsub, roots_of

X = pr.X


class Kind(enum.Enum):
    FIBONACCI = "FibonacciType"
    LUCAS = "LucasType"


class NegativeIndex(IndexError):
    pass


class NonZeroRadicalPart(ArithmeticError):
    pass


class InexactAlphaDivision(ArithmeticError):
    pass


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    name: str
    symbol: str
    kind: Kind
    p0: Poly
    p1: Poly
    d: Poly
    g: Poly
    alpha: int
    partner: str | None = None
    delta: Poly = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "delta", self.d * self.d + 4 * self.g)

    def invariant_violations(self) -> list[str]:
        """Empty when every structural invariant of a GFP family holds."""
        bad = []
        if self.d.is_zero() or self.g.is_zero():
            bad.append("d and g must be nonzero")
        elif pr.gcd(self.d, self.g) != pr.ONE:
            bad.append(f"gcd(d, g) = {pr.gcd(self.d, self.g)}, expected a unit")
        if self.kind is Kind.FIBONACCI:
            if self.p0 != pr.ZERO or self.p1 != pr.ONE:
                bad.append("Fibonacci type needs p0 = 0 and p1 = 1")
        else:
            if 2 * self.p1 != self.p0 * self.d:
                bad.append("Lucas type needs 2*p1 = p0*d")
            if not self.p0.is_const() or abs(self.p0.const_value()) not in (1, 2):
                bad.append("Lucas type needs |p0| in {1, 2}")
            elif self.p0.const_value() * self.alpha != 2:
                # G*_0 = (a^0 + b^0)/alpha = 2/alpha
                bad.append(f"alpha = {self.alpha} inconsistent with p0 = {self.p0}")
        if self.alpha not in (1, 2):
            bad.append("alpha must be 1 or 2")
        return bad


def _fib(name, symbol, d, g, partner=None, alpha=1):
    return FamilySpec(name, symbol, Kind.FIBONACCI, pr.ZERO, pr.ONE, d, g, alpha, partner)


def _luc(name, symbol, p0, d, g, alpha, partner=None):
    p0 = Poly.const(p0)
    p1 = pr.scale(p0 * d, Fraction(1, 2))
    return FamilySpec(name, symbol, Kind.LUCAS, p0, p1, d, g, alpha, partner)


_ONE = pr.ONE
_NEG_ONE = Poly.const(-1)
_TWO_X = Poly((0, 2))

# Fibonacci-type members carry the alpha of their Lucas-type partner, since
# every identity over a pair uses the pair's alpha.
_REGISTRY: tuple[FamilySpec, ...] = (
    _fib("fibonacci", "F", X, _ONE, partner="lucas"),
    _luc("lucas", "D", 2, X, _ONE, 1, partner="fibonacci"),
    _fib("pell", "P", _TWO_X, _ONE, partner="pell-lucas-prime", alpha=2),
    _luc("pell-lucas", "Q", 2, _TWO_X, _ONE, 1),
    _luc("pell-lucas-prime", "Q'", 1, _TWO_X, _ONE, 2, partner="pell"),
    _fib("fermat", "Phi", Poly((0, 3)), Poly.const(-2), partner="fermat-lucas"),
    _luc("fermat-lucas", "theta", 2, Poly((0, 3)), Poly.const(-2), 1, partner="fermat"),
    _fib("chebyshev-second", "U", _TWO_X, _NEG_ONE, partner="chebyshev-first", alpha=2),
    _luc("chebyshev-first", "T", 1, _TWO_X, _NEG_ONE, 2, partner="chebyshev-second"),
    _fib("jacobsthal", "J", _ONE, _TWO_X, partner="jacobsthal-lucas"),
    _luc("jacobsthal-lucas", "j", 2, _ONE, _TWO_X, 1, partner="jacobsthal"),
    _fib("morgan-voyce-b", "B", Poly((2, 1)), _NEG_ONE, partner="morgan-voyce-c"),
    _luc("morgan-voyce-c", "C", 2, Poly((2, 1)), _NEG_ONE, 1, partner="morgan-voyce-b"),
)

_BY_NAME = {f.name: f for f in _REGISTRY}


def registry() -> list[FamilySpec]:
    return list(_REGISTRY)


def family(name: str) -> FamilySpec:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; known: {', '.join(_BY_NAME)}") from None


@dataclass(frozen=True)
class FamilyPair:
    """An equivalent pair: a Fibonacci-type and a Lucas-type family sharing d and g."""

    fib: FamilySpec
    lucas: FamilySpec

    @property
    def name(self) -> str:
        return f"{self.fib.name}/{self.lucas.name}"

    @property
    def alpha(self) -> int:
        return self.lucas.alpha

    @property
    def d(self) -> Poly:
        return self.fib.d

    @property
    def g(self) -> Poly:
        return self.fib.g

    @property
    def delta(self) -> Poly:
        return self.fib.delta

    def __contains__(self, name: str) -> bool:
        return name in (self.fib.name, self.lucas.name)


def pairs(families=None) -> list[FamilyPair]:
    """The partnered pairs, in registry order of their Fibonacci-type member."""
    families = _REGISTRY if families is None else families
    by_name = {f.name: f for f in families}
    out = []
    for f in families:
        if f.kind is Kind.FIBONACCI and f.partner:
            out.append(FamilyPair(f, by_name[f.partner]))
    return out


def validate_registry(families=None) -> list[str]:
    """Every invariant violation across the registry, as messages."""
    families = _REGISTRY if families is None else families
    by_name = {f.name: f for f in families}
    problems = [f"{f.name}: {msg}" for f in families for msg in f.invariant_violations()]
    for f in families:
        if not f.partner:
            continue
        p = by_name.get(f.partner)
        if p is None:
            problems.append(f"{f.name}: partner {f.partner!r} missing")
            continue
        if p.partner != f.name:
            problems.append(f"{f.name}: partnership with {p.name} is not symmetric")
        if p.kind is f.kind:
            problems.append(f"{f.name}: partner {p.name} has the same kind")
        if (p.d, p.g) != (f.d, f.g):
            problems.append(f"{f.name}: partner {p.name} has different d, g")
        if p.alpha != f.alpha:
            problems.append(f"{f.name}: partner {p.name} has different alpha")
    return problems


class SequenceCache:
    """Memoized terms of one family, extended on demand by the recurrence."""

    def __init__(self, family: FamilySpec):
        self.family = family
        self.terms: list[Poly] = [family.p0, family.p1]

    def __getitem__(self, n: int) -> Poly:
        return term(self, n)

    def __len__(self):
        return len(self.terms)


def term(cache: SequenceCache, n: int) -> Poly:
    if n < 0:
        raise NegativeIndex(f"index {n} < 0 for {cache.family.name}")
    terms = cache.terms
    if n < len(terms):
        return terms[n]
    d, g = cache.family.d, cache.family.g
    while len(terms) <= n:
        terms.append(pr.add(pr.mul(d, terms[-1]), pr.mul(g, terms[-2])))
    return terms[n]


def fibonacci_equivalent(fam: FamilySpec) -> FamilySpec:
    """The Fibonacci-type family with the same d and g."""
    if fam.kind is Kind.FIBONACCI:
        return fam
    return FamilySpec(fam.name + "~fib", fam.symbol + "~", Kind.FIBONACCI, pr.ZERO, pr.ONE,
                      fam.d, fam.g, fam.alpha, fam.name)


def lucas_equivalent(fam: FamilySpec) -> FamilySpec:
    """The Lucas-type family with the same d and g (its partner when it has one)."""
    if fam.kind is Kind.LUCAS:
        return fam
    if fam.partner:
        return family(fam.partner)
    return _luc(fam.name + "~luc", fam.symbol + "~", 2, fam.d, fam.g, 1, fam.name)


def binet_term(fam: FamilySpec, n: int) -> Poly:
    """G_n from the closed form: (a^n + b^n)/alpha or (a^n - b^n)/(a - b)."""
    if n < 0:
        raise NegativeIndex(f"index {n} < 0 for {fam.name}")
    a, b = roots_of(fam)
    an, bn = qpow(a, n), qpow(b, n)
    if fam.kind is Kind.LUCAS:
        total = qadd(an, bn)
        if not total.v.is_zero():
            raise NonZeroRadicalPart(f"{fam.name}: a^{n} + b^{n} has s-part {total.v}")
        value = pr.scale(total.u, Fraction(1, fam.alpha))
        if any(isinstance(c, Fraction) for c in value.coeffs):
            raise InexactAlphaDivision(f"{fam.name}: ({total.u})/{fam.alpha} is not in Z[x]")
        return value
    diff = qsub(an, bn)
    # a^n - b^n = v*s, and a - b = s
    if not diff.u.is_zero():
        raise NonZeroRadicalPart(f"{fam.name}: a^{n} - b^{n} has rational part {diff.u}")
    return diff.v


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class FamilyReport:
    family: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def check_family(fam: FamilySpec, max_n: int = 32) -> FamilyReport:
    """Exact consistency checks of one family against its Binet data."""
    checks: list[CheckResult] = []

    def record(name, ok, detail=""):
        checks.append(CheckResult(name, bool(ok), "" if ok else detail))

    a, b = roots_of(fam)
    d_q, g_q = QuadElem.of(fam.d, fam.delta), QuadElem.of(fam.g, fam.delta)
    s = qsub(a, b)
    record("a+b=d", qadd(a, b) == d_q, f"a+b = {qadd(a, b)}")
    record("ab=-g", qmul(a, b) == -g_q, f"ab = {qmul(a, b)}")
    sq = qmul(s, s)
    record("(a-b)^2=d^2+4g", sq == QuadElem.of(fam.d * fam.d + 4 * fam.g, fam.delta), f"(a-b)^2 = {sq}")
    record("b=conj(a)", b == conj(a))

    luc = lucas_equivalent(fam)
    fib = fibonacci_equivalent(fam)
    lucas_2 = term(SequenceCache(luc), 2)
    fib_3 = term(SequenceCache(fib), 3)
    lhs = luc.alpha * lucas_2 + 2 * fam.g
    record("alpha*G*_2+2g=delta", lhs == fam.delta, f"{lhs} != {fam.delta}")
    lhs = fib_3 + 3 * fam.g
    record("G'_3+3g=delta", lhs == fam.delta, f"{lhs} != {fam.delta}")

    cache = SequenceCache(fam)
    mismatch = None
    for n in range(max_n + 1):
        try:
            closed = binet_term(fam, n)
        except (NonZeroRadicalPart, InexactAlphaDivision) as exc:
            mismatch = f"n={n}: {exc}"
            break
        rec = term(cache, n)
        if closed != rec:
            mismatch = f"n={n}: binet {closed} != recurrence {rec}"
            break
    record(f"binet=recurrence(0..{max_n})", mismatch is None, mismatch or "")
    return FamilyReport(fam.name, checks)
