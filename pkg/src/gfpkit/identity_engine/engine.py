"""Grounding, exact evaluation and bounded verification of identities."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .. import polyring as pr
from ..gfp_core import FamilyPair, SequenceCache, pairs as registry_pairs, term
from ..quadext import NonPolynomialRadicand, QuadElem, format_quad, qadd, qdiv, qmul, qpow, qsqrt, qsub
from .exprs import BinOp, Constraint, IdentityDef, Neg, Num, Pow, Seq, Sqrt, Sym, index_exprs, map_indices
from .indexexpr import IndexExpr


class InstantiationError(ValueError):
    pass


class ConstraintViolated(InstantiationError):
    pass


class NegativeSubscript(InstantiationError):
    pass


PASS, FAIL, NOT_APPLICABLE = "pass", "fail", "not_applicable"


@dataclass(frozen=True)
class Counterexample:
    assignment: dict
    lhs: str
    rhs: str

    def to_json(self) -> dict:
        return {"assignment": dict(self.assignment), "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class VerificationReport:
    id: str
    pair: str
    tuples_checked: int
    status: str
    counterexample: Counterexample | None = None

    def __post_init__(self):
        if self.status == FAIL and self.counterexample is None:
            raise ValueError("a failing report needs a counterexample")
        if self.status == PASS and self.tuples_checked <= 0:
            raise ValueError("a passing report needs at least one checked tuple")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "pair": self.pair,
            "tuples_checked": self.tuples_checked,
            "status": self.status,
            "counterexample": self.counterexample.to_json() if self.counterexample else None,
        }


# -- grounding -----------------------------------------------------------------

def _alpha_env(alpha: int | None) -> dict:
    return {} if alpha is None else {"alpha": alpha}


def _constraint_applies(c: Constraint, alpha: int | None) -> bool:
    return alpha is not None or "alpha" not in c.variables


def instantiate(idef: IdentityDef, assignment: Mapping[str, int], alpha: int | None = None) -> tuple:
    """Substitute ``assignment`` into every side; returns the ground sides.

    Constraints mentioning ``alpha`` are checked only when ``alpha`` is given.
    """
    missing = [v for v in idef.vars if v not in assignment]
    if missing:
        raise InstantiationError(f"{idef.id}: no value for {missing}")
    env = dict(assignment)
    env.update(_alpha_env(alpha))
    for c in idef.constraints:
        if _constraint_applies(c, alpha) and not c.holds(env):
            raise ConstraintViolated(f"{idef.id}: {c} fails at {dict(assignment)}")

    def ground(ix: IndexExpr) -> IndexExpr:
        value = ix.evaluate(env)
        if value < 0:
            raise NegativeSubscript(f"{idef.id}: {ix} = {value} < 0 at {dict(assignment)}")
        return IndexExpr.const(value)

    return tuple(map_indices(side, ground) for side in idef.sides)


# -- evaluation ----------------------------------------------------------------

def make_caches(pair: FamilyPair) -> dict:
    return {"Gp": SequenceCache(pair.fib), "Gs": SequenceCache(pair.lucas)}


def eval_expr(ground, pair: FamilyPair, caches: dict | None = None) -> QuadElem:
    """Exact value of a ground expression in Q[x][s], s^2 = Delta of the pair."""
    if caches is None:
        caches = make_caches(pair)
    delta = pair.delta
    return _eval(ground, pair, caches, delta, None)


def _const(p, delta) -> QuadElem:
    return QuadElem(p if isinstance(p, pr.Poly) else pr.Poly.const(p), pr.ZERO, delta)


def _eval(e, pair, caches, delta, env) -> QuadElem:
    if isinstance(e, Seq):
        n = e.index.evaluate(env) if env is not None else e.index.value
        if n < 0:
            raise NegativeSubscript(f"{e.kind}[{e.index}] = {n} < 0")
        return QuadElem(term(caches[e.kind], n), pr.ZERO, delta)
    if isinstance(e, BinOp):
        a = _eval(e.left, pair, caches, delta, env)
        b = _eval(e.right, pair, caches, delta, env)
        if e.op == "+":
            return qadd(a, b)
        if e.op == "-":
            return qsub(a, b)
        if e.op == "*":
            return qmul(a, b)
        return qdiv(a, b)
    if isinstance(e, Pow):
        k = e.exp.evaluate(env) if env is not None else e.exp.value
        if k < 0:
            raise NegativeSubscript(f"exponent {e.exp} = {k} < 0")
        base = _eval(e.base, pair, caches, delta, env)
        if base.v.is_zero():
            return QuadElem(pr.pow(base.u, k), pr.ZERO, delta)
        return qpow(base, k)
    if isinstance(e, Sym):
        name = e.name
        if name == "d":
            return _const(pair.d, delta)
        if name == "g":
            return _const(pair.g, delta)
        if name == "neg_g":
            return _const(-pair.g, delta)
        if name == "alpha":
            return _const(pair.alpha, delta)
        if name == "Delta":
            return _const(delta, delta)
        if name == "S":
            return QuadElem(pr.ZERO, pr.ONE, delta)
        raise ValueError(f"unknown symbol {name}")
    if isinstance(e, Num):
        return _const(e.value, delta)
    if isinstance(e, Neg):
        return -_eval(e.arg, pair, caches, delta, env)
    if isinstance(e, Sqrt):
        return qsqrt(_eval(e.arg, pair, caches, delta, env))
    raise TypeError(f"not an expression node: {e!r}")


# -- enumeration ---------------------------------------------------------------

def _solve_plan(idef: IdentityDef, constraints) -> list[tuple[str, IndexExpr, int]]:
    """For each equality constraint pick a variable to solve for.

    Returns (var, form, coeff) with ``form = lhs - rhs`` linear in ``var``
    with coefficient ``coeff`` in {1, -1}.
    """
    plan, solved = [], set()
    for c in constraints:
        if c.op != "=":
            continue
        form = c.lhs - c.rhs
        for v in reversed(idef.vars):
            if v in solved:
                continue
            coeff = form.linear_coeff(v)
            if coeff in (1, -1):
                plan.append((v, form, coeff))
                solved.add(v)
                break
    # a solved variable may only depend on free ones or ones solved earlier
    ordered, done = [], set()
    pending = list(plan)
    free = set(idef.vars) - solved
    while pending:
        for item in pending:
            deps = item[1].variables - {item[0]} - {"alpha"}
            if deps <= free | done:
                ordered.append(item)
                done.add(item[0])
                pending.remove(item)
                break
        else:
            return []  # circular; fall back to plain enumeration
    return ordered


def assignments(idef: IdentityDef, grid_bound: int, alpha: int | None = None) -> Iterator[dict]:
    """Admissible index tuples in deterministic order.

    Every variable ranges over [0, grid_bound] unless the identity overrides
    it; tuples violating a constraint or giving a negative subscript or
    exponent are skipped.
    """
    bounds = {v: (0, grid_bound) for v in idef.vars}
    for v, lo, hi in idef.ranges:
        bounds[v] = (lo, hi)
    alpha_env = _alpha_env(alpha)
    constraints = []
    for c in idef.constraints:
        if not _constraint_applies(c, alpha):
            continue
        if alpha is not None and "alpha" in c.variables:
            c = Constraint(c.lhs.substitute(alpha_env), c.op, c.rhs.substitute(alpha_env))
        if not c.variables:
            if not c.holds({}):
                return
            continue
        constraints.append(c)
    plan = _solve_plan(idef, constraints)
    solved = [v for v, _, _ in plan]
    free = [v for v in idef.vars if v not in solved]
    indices = [ix for side in idef.sides for ix in index_exprs(side)]
    for values in itertools.product(*(range(bounds[v][0], bounds[v][1] + 1) for v in free)):
        env = dict(zip(free, values))
        ok = True
        for v, form, coeff in plan:
            env[v] = 0
            rest = form.evaluate(env)
            val = -rest * coeff  # coeff is +-1
            lo, hi = bounds[v]
            if not lo <= val <= hi:
                ok = False
                break
            env[v] = val
        if not ok:
            continue
        if not all(c.holds(env) for c in constraints):
            continue
        if any(ix.evaluate(env) < 0 for ix in indices):
            continue
        yield {v: env[v] for v in idef.vars}


# -- verification --------------------------------------------------------------

def verify_identity(idef: IdentityDef, pair: FamilyPair, grid_bound: int,
                    caches: dict | None = None) -> VerificationReport:
    if grid_bound < 1:
        raise ValueError("grid_bound must be >= 1")
    if caches is None:
        caches = make_caches(pair)
    delta = pair.delta
    checked = 0
    for env in assignments(idef, grid_bound, pair.alpha):
        try:
            values = [_eval(side, pair, caches, delta, env) for side in idef.sides]
        except pr.NotASquare:
            continue
        except (pr.PolyError, NonPolynomialRadicand) as exc:
            msg = f"error: {type(exc).__name__}: {exc}"
            return VerificationReport(idef.id, pair.name, checked + 1, FAIL,
                                      Counterexample(env, msg, msg))
        checked += 1
        first = values[0]
        for other in values[1:]:
            if other != first:
                return VerificationReport(idef.id, pair.name, checked, FAIL,
                                          Counterexample(env, format_quad(first), format_quad(other)))
    if checked == 0:
        return VerificationReport(idef.id, pair.name, 0, NOT_APPLICABLE)
    return VerificationReport(idef.id, pair.name, checked, PASS)


# Per-process caches; each worker process owns its own.
_WORKER_CACHES: dict = {}


def _worker_caches(pair: FamilyPair) -> dict:
    caches = _WORKER_CACHES.get(pair.name)
    if caches is None:
        caches = _WORKER_CACHES[pair.name] = make_caches(pair)
    return caches


def _run_task(task) -> VerificationReport:
    idef, pair, grid_bound = task
    return verify_identity(idef, pair, grid_bound, _worker_caches(pair))


def default_jobs() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def verify_corpus(corpus: Sequence[IdentityDef], pairs: Sequence[FamilyPair] | None = None,
                  grid_bound: int = 8, jobs: int = 1) -> list[VerificationReport]:
    """Verify every (identity, pair); results in (identity, pair) order for any ``jobs``."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    pairs = registry_pairs() if pairs is None else list(pairs)
    tasks = [(idef, pair, grid_bound) for idef in corpus for pair in pairs]
    if jobs == 1 or len(tasks) <= 1:
        caches = {p.name: make_caches(p) for p in pairs}
        return [verify_identity(i, p, b, caches[p.name]) for i, p, b in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (jobs * 8))))
