"""First-order logic with variadic function symbols and ellipsis terms."""

from .errors import BudgetExceeded, Undetermined
from .language import Signature, parse_signature, load_signature, std_signature, validate
from .parser import ParseError, parse_formula, parse_term, print_formula, print_term
from .qelim import NotUqf, classify, eliminate, eliminate_to_formula, verify
from .semantics import (
    Assignment,
    EvalBudget,
    GeneralizedModel,
    Model,
    Verdict,
    interp,
    interp_generalized,
    interp_semantic,
    interp_syntactic,
    satisfies,
    standard_model,
)
from .subst import substitutable, substitutable_formula, substitute, substitute_formula
from .syntax import (
    And,
    App,
    Const,
    Ellipsis,
    Eq,
    Exists,
    Forall,
    Iff,
    Implies,
    NaryEllipsis,
    Not,
    Numeral,
    Or,
    Pred,
    Var,
    VarApp,
    complexity,
    free_vars,
    free_vars_formula,
)

__all__ = [name for name in dir() if not name.startswith("_")]
