"""nanolog: a tiny Prolog engine with an interactive prover and HTTP service."""

from .parser import (
    BareVariableHead,
    ParseError,
    SourcePosition,
    parse_program,
    parse_query,
    parse_rule,
    parse_term,
    print_program,
    print_rule,
    print_term,
)
from .solver import (
    Branch,
    CyclicEnvironment,
    SearchTree,
    Solution,
    SolutionLeaf,
    SolveOptions,
    SolveOutcome,
    SolveStream,
    Strategy,
    TraceStep,
    Truncated,
    build_tree,
    solve,
)
from .terms import (
    DEFAULT_SUBST_BUDGET,
    EMPTY_ENV,
    RENAME_SEPARATOR,
    BudgetExhausted,
    Compound,
    Env,
    NanologError,
    Program,
    Rule,
    Term,
    Var,
    apply_subst_rule,
    apply_subst_term,
    apply_subst_terms,
    env_is_acyclic,
    rename_rule,
    rule_vars,
    term_vars,
)
from .unification import unify

__version__ = "0.1.0"

__all__ = [
    "BareVariableHead",
    "Branch",
    "BudgetExhausted",
    "Compound",
    "CyclicEnvironment",
    "DEFAULT_SUBST_BUDGET",
    "EMPTY_ENV",
    "Env",
    "NanologError",
    "ParseError",
    "Program",
    "RENAME_SEPARATOR",
    "Rule",
    "SearchTree",
    "Solution",
    "SolutionLeaf",
    "SolveOptions",
    "SolveOutcome",
    "SolveStream",
    "SourcePosition",
    "Strategy",
    "Term",
    "TraceStep",
    "Truncated",
    "Var",
    "apply_subst_rule",
    "apply_subst_term",
    "apply_subst_terms",
    "build_tree",
    "env_is_acyclic",
    "parse_program",
    "parse_query",
    "parse_rule",
    "parse_term",
    "print_program",
    "print_rule",
    "print_term",
    "rename_rule",
    "rule_vars",
    "solve",
    "term_vars",
    "unify",
    "__version__",
]
