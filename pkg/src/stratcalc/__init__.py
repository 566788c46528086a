"""stratcalc: a typed strategic term-rewriting engine.

Strategies are partial maps from terms to terms, built from rewrite
rules, choice/sequence/negation, congruences, generic traversal
primitives, strategy extension/restriction, overloading, and recursive
combinator definitions. A two-level type system (many-sorted arrows
below, generic TP / TU(t) types above) checks programs before a
big-step evaluator runs them.
"""

from .elaborate import desugar, elaborate, elaborate_program
from .errors import (
    EngineError,
    ParseError,
    StaticError,
    StratError,
)
from .evaluate import (
    EngineFailure,
    EvalConfig,
    EvalState,
    apply_strategy,
    eval_body,
    run_program,
)
from .parser import parse_program, parse_term
from .prelude import load_prelude
from .printer import render_program, render_stype, render_term, render_ttype
from .terms import (
    Amp,
    Arrow,
    CombinatorType,
    Constant,
    Context,
    FAILURE,
    Failure,
    FunApp,
    Ok,
    Pair,
    PairType,
    Sort,
    TP_TYPE,
    TU,
    TypeVar,
    UNIT,
    UnitTuple,
    Var,
    check_context,
    match,
    substitute,
    tag_term,
    type_of_term,
)
from .typecheck import (
    apply_type,
    check_program,
    composable,
    domains,
    generically_leq,
    generically_less,
    glb,
    negatable,
    type_of_application,
    type_of_strategy,
    wf_strategy_type,
    wf_term_type,
)
