"""Core model: terms, term/strategy types, contexts, matching, substitution.

Terms and types are immutable. Term equality is structural; the optional
sort tag is metadata and excluded from equality and hashing.
"""

from dataclasses import dataclass, field

from .errors import (
    ArgSortMismatch,
    ArityMismatch,
    DuplicateName,
    UnboundVariable,
    UndeclaredSortInDecl,
    UndeclaredSymbol,
)


# ---------------------------------------------------------------------------
# Term types


class TermType:
    pass


@dataclass(frozen=True)
class Sort(TermType):
    name: str

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Unit(TermType):
    def __repr__(self):
        return "()"


UNIT = Unit()


@dataclass(frozen=True)
class PairType(TermType):
    left: TermType
    right: TermType

    def __repr__(self):
        return "(%r,%r)" % (self.left, self.right)


@dataclass(frozen=True)
class TypeVar(TermType):
    name: str

    def __repr__(self):
        return self.name


# ---------------------------------------------------------------------------
# Strategy types


class StrategyType:
    pass


@dataclass(frozen=True)
class Arrow(StrategyType):
    dom: TermType
    cod: TermType

    def __repr__(self):
        return "%r -> %r" % (self.dom, self.cod)


@dataclass(frozen=True)
class TP(StrategyType):
    def __repr__(self):
        return "TP"


TP_TYPE = TP()


@dataclass(frozen=True)
class TU(StrategyType):
    result: TermType

    def __repr__(self):
        return "TU(%r)" % self.result


@dataclass(frozen=True)
class Amp(StrategyType):
    left: StrategyType
    right: StrategyType

    def __repr__(self):
        return "%r & %r" % (self.left, self.right)


def amp_branches(pi):
    """Flatten nested Amp into a list of non-Amp branch types."""
    if isinstance(pi, Amp):
        return amp_branches(pi.left) + amp_branches(pi.right)
    return [pi]


def amp_of(branches):
    """Rebuild a strategy type from a non-empty branch list (right-nested)."""
    assert branches
    out = branches[-1]
    for b in reversed(branches[:-1]):
        out = Amp(b, out)
    return out


def types_equal(pi1, pi2):
    """Strategy type equality modulo associativity/commutativity of &."""
    if isinstance(pi1, Amp) or isinstance(pi2, Amp):
        return frozenset(amp_branches(pi1)) == frozenset(amp_branches(pi2))
    return pi1 == pi2


def is_generic(pi):
    return isinstance(pi, (TP, TU))


@dataclass(frozen=True)
class CombinatorType:
    type_params: tuple  # of str
    arg_types: tuple  # of StrategyType
    result_type: StrategyType


# ---------------------------------------------------------------------------
# Terms


class Term:
    tag = None

    def with_tag(self, tag):
        raise NotImplementedError


@dataclass(frozen=True)
class Constant(Term):
    name: str
    tag: TermType = field(default=None, compare=False)

    def with_tag(self, tag):
        return Constant(self.name, tag)


@dataclass(frozen=True)
class FunApp(Term):
    name: str
    args: tuple
    tag: TermType = field(default=None, compare=False)

    def with_tag(self, tag):
        return FunApp(self.name, self.args, tag)


@dataclass(frozen=True)
class Var(Term):
    name: str
    tag: TermType = field(default=None, compare=False)

    def with_tag(self, tag):
        return Var(self.name, tag)


@dataclass(frozen=True)
class UnitTuple(Term):
    tag: TermType = field(default=None, compare=False)

    def with_tag(self, tag):
        return UnitTuple(tag)


@dataclass(frozen=True)
class Pair(Term):
    left: Term
    right: Term
    tag: TermType = field(default=None, compare=False)

    def with_tag(self, tag):
        return Pair(self.left, self.right, tag)


def is_ground(t):
    if isinstance(t, Var):
        return False
    if isinstance(t, FunApp):
        return all(is_ground(a) for a in t.args)
    if isinstance(t, Pair):
        return is_ground(t.left) and is_ground(t.right)
    return True


def children(t):
    """Immediate subterms of a compound term; constants and () have none."""
    if isinstance(t, FunApp):
        return list(t.args)
    if isinstance(t, Pair):
        return [t.left, t.right]
    return []


# ---------------------------------------------------------------------------
# Reducts


@dataclass(frozen=True)
class Ok:
    term: Term


@dataclass(frozen=True)
class Failure:
    pass


FAILURE = Failure()
Reduct = object  # Ok | Failure


# ---------------------------------------------------------------------------
# Context


@dataclass
class Context:
    sorts: set = field(default_factory=set)
    constants: dict = field(default_factory=dict)  # name -> Sort
    functions: dict = field(default_factory=dict)  # name -> (arg sorts, result sort)
    term_vars: dict = field(default_factory=dict)  # name -> TermType
    combinators: dict = field(default_factory=dict)  # name -> CombinatorType
    strategy_params: dict = field(default_factory=dict)  # name -> StrategyType
    type_vars: set = field(default_factory=set)
    # Declarations in source order, kept so duplicates survive for checking:
    # list of (kind, name, pos).
    decls: list = field(default_factory=list)

    def declare_sort(self, name, pos=None):
        self.decls.append(("sort", name, pos))
        self.sorts.add(name)

    def declare_constant(self, name, sort, pos=None):
        self.decls.append(("symbol", name, pos))
        self.constants[name] = sort

    def declare_function(self, name, arg_sorts, result_sort, pos=None):
        self.decls.append(("symbol", name, pos))
        self.functions[name] = (tuple(arg_sorts), result_sort)

    def declare_var(self, name, ttype, pos=None):
        self.decls.append(("symbol", name, pos))
        self.term_vars[name] = ttype

    def declare_combinator(self, name, ctype, pos=None):
        self.decls.append(("symbol", name, pos))
        self.combinators[name] = ctype

    def with_params(self, type_params, strategy_params):
        """A scope for checking one definition body."""
        sub = Context(
            sorts=self.sorts,
            constants=self.constants,
            functions=self.functions,
            term_vars=self.term_vars,
            combinators=self.combinators,
            strategy_params=dict(strategy_params),
            type_vars=set(type_params),
            decls=self.decls,
        )
        return sub


def check_context(ctx):
    """Return a list of diagnostics; empty means the context is well-formed."""
    diags = []
    seen = {"sort": set(), "symbol": set()}
    for kind, name, pos in ctx.decls:
        if name in seen[kind]:
            diags.append(DuplicateName("duplicate declaration of %s" % name, pos=pos))
        seen[kind].add(name)

    def sort_known(s, what, pos):
        if s.name not in ctx.sorts:
            diags.append(
                UndeclaredSortInDecl(
                    "%s mentions undeclared sort %s" % (what, s.name), pos=pos
                )
            )

    for name, sort in ctx.constants.items():
        sort_known(sort, "con %s" % name, None)
    for name, (arg_sorts, result) in ctx.functions.items():
        for s in arg_sorts:
            sort_known(s, "fun %s" % name, None)
        sort_known(result, "fun %s" % name, None)
    for name, tt in ctx.term_vars.items():
        for s in _sorts_in_term_type(tt):
            sort_known(s, "var %s" % name, None)
    return diags


def _sorts_in_term_type(tt):
    if isinstance(tt, Sort):
        return [tt]
    if isinstance(tt, PairType):
        return _sorts_in_term_type(tt.left) + _sorts_in_term_type(tt.right)
    return []


# ---------------------------------------------------------------------------
# Term typing


def type_of_term(ctx, t):
    """The unique type of t under ctx; raises on undeclared/ill-sorted terms."""
    if isinstance(t, Constant):
        if t.name not in ctx.constants:
            raise UndeclaredSymbol("undeclared constant %s" % t.name)
        return ctx.constants[t.name]
    if isinstance(t, FunApp):
        if t.name not in ctx.functions:
            raise UndeclaredSymbol("undeclared function %s" % t.name)
        arg_sorts, result = ctx.functions[t.name]
        if len(t.args) != len(arg_sorts):
            raise ArityMismatch(
                "%s expects %d arguments, got %d"
                % (t.name, len(arg_sorts), len(t.args))
            )
        for i, (a, want) in enumerate(zip(t.args, arg_sorts)):
            got = type_of_term(ctx, a)
            if got != want:
                raise ArgSortMismatch(
                    "argument %d of %s has type %r, expected %r"
                    % (i + 1, t.name, got, want)
                )
        return result
    if isinstance(t, Var):
        if t.name not in ctx.term_vars:
            raise UnboundVariable("undeclared variable %s" % t.name)
        return ctx.term_vars[t.name]
    if isinstance(t, UnitTuple):
        return UNIT
    if isinstance(t, Pair):
        return PairType(type_of_term(ctx, t.left), type_of_term(ctx, t.right))
    raise TypeError("not a term: %r" % (t,))


def tag_term(ctx, t):
    """Rebuild t with every node carrying its sort tag."""
    if isinstance(t, FunApp):
        args = tuple(tag_term(ctx, a) for a in t.args)
        t = FunApp(t.name, args)
    elif isinstance(t, Pair):
        t = Pair(tag_term(ctx, t.left), tag_term(ctx, t.right))
    return t.with_tag(type_of_term(ctx, t))


def get_tag(ctx, t):
    """The node's tag, computing it on demand for untagged terms."""
    if t.tag is not None:
        return t.tag
    return type_of_term(ctx, t)


# ---------------------------------------------------------------------------
# Matching and substitution


def match(pattern, subject):
    """First-order matching; returns a substitution dict or None.

    Repeated pattern variables require structurally equal subterms
    (tags excluded).
    """
    theta = {}
    if _match_into(pattern, subject, theta):
        return theta
    return None


def _match_into(pattern, subject, theta):
    if isinstance(pattern, Var):
        bound = theta.get(pattern.name)
        if bound is None:
            theta[pattern.name] = subject
            return True
        return bound == subject
    if isinstance(pattern, Constant):
        return isinstance(subject, Constant) and pattern.name == subject.name
    if isinstance(pattern, FunApp):
        return (
            isinstance(subject, FunApp)
            and pattern.name == subject.name
            and len(pattern.args) == len(subject.args)
            and all(
                _match_into(p, s, theta)
                for p, s in zip(pattern.args, subject.args)
            )
        )
    if isinstance(pattern, UnitTuple):
        return isinstance(subject, UnitTuple)
    if isinstance(pattern, Pair):
        return (
            isinstance(subject, Pair)
            and _match_into(pattern.left, subject.left, theta)
            and _match_into(pattern.right, subject.right, theta)
        )
    raise TypeError("not a pattern: %r" % (pattern,))


def substitute(theta, t):
    """Apply theta to t; every Var in t must be bound."""
    if isinstance(t, Var):
        if t.name not in theta:
            raise UnboundVariable("unbound variable %s" % t.name)
        return theta[t.name]
    if isinstance(t, FunApp):
        return FunApp(t.name, tuple(substitute(theta, a) for a in t.args), t.tag)
    if isinstance(t, Pair):
        return Pair(substitute(theta, t.left), substitute(theta, t.right), t.tag)
    return t
