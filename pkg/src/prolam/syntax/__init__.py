"""Simply typed lambda calculus over one base type."""

from .church import Alphabet, Word, as_word, church_term, word_of_church
from .generate import closed_normal_forms, long_normal_forms
from .normal import beta_eta_equal, normalize
from .parser import parse_term, parse_type, show
from .serial import term_from_json, term_to_json, type_from_json, type_to_json
from .terms import App, Fst, Lam, Pair, Snd, Term, UnitVal, Var, apps, is_closed, size, typecheck
from .types import (
    Arrow,
    Base,
    O,
    Prod,
    TypeExpr,
    UNIT,
    Unit,
    arrow_types,
    arrows,
    church_arity,
    church_type,
    depth,
    is_first_order,
    is_inhabited,
    order,
    uncurry,
)

__all__ = [
    "Alphabet", "App", "Arrow", "Base", "Fst", "Lam", "O", "Pair", "Prod", "Snd", "Term",
    "TypeExpr", "UNIT", "Unit", "UnitVal", "Var", "Word", "apps", "arrow_types", "arrows",
    "as_word", "beta_eta_equal", "church_arity", "church_term", "church_type",
    "closed_normal_forms", "depth", "is_closed", "is_first_order", "is_inhabited",
    "long_normal_forms", "normalize", "order", "parse_term", "parse_type", "show", "size",
    "term_from_json", "term_to_json", "type_from_json", "type_to_json", "typecheck",
    "uncurry", "word_of_church",
]
