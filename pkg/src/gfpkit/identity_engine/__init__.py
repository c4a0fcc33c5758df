"""Identity definitions: parsing, grounding, exact evaluation and bounded verification."""

from .corpus import CorpusError, bundled_corpus_dir, check_manifest, load_corpus, load_file
from .engine import (
    FAIL,
    NOT_APPLICABLE,
    PASS,
    ConstraintViolated,
    Counterexample,
    InstantiationError,
    NegativeSubscript,
    VerificationReport,
    assignments,
    default_jobs,
    eval_expr,
    instantiate,
    make_caches,
    verify_corpus,
    verify_identity,
)
from .exprs import Constraint, IdentityDef, format_identity, to_text
from .indexexpr import IndexExpr
from .parser import DslError, DslSyntaxError, UnboundVariable, UnknownSymbol, parse_identity

__all__ = [
    "FAIL", "NOT_APPLICABLE", "PASS",
    "Constraint", "ConstraintViolated", "CorpusError", "Counterexample", "DslError",
    "DslSyntaxError", "IdentityDef", "IndexExpr", "InstantiationError", "NegativeSubscript",
    "UnboundVariable", "UnknownSymbol", "VerificationReport",
    "assignments", "bundled_corpus_dir", "check_manifest", "default_jobs", "eval_expr",
    "format_identity", "instantiate", "load_corpus", "load_file", "make_caches",
    "parse_identity", "to_text", "verify_corpus", "verify_identity",
]
