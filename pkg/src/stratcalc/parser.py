"""Concrete syntax: tokenizer and recursive-descent parser.

Bodies are parsed with bare names left as Call nodes; a resolution pass
rewrites them to congruences / parameter references / combinator calls
once the whole program has been seen (definitions may be mutually
recursive, so names can be used before their `def`).
"""

import re

from . import syntax as S
from .errors import (
    CallArityMismatch,
    CallTypeArgMismatch,
    DuplicateDefinition,
    ParseError,
    UnknownName,
)
from .terms import (
    Arrow,
    Amp,
    CombinatorType,
    Constant,
    Context,
    FunApp,
    Pair,
    PairType,
    Sort,
    TP_TYPE,
    TU,
    TypeVar,
    UNIT,
    UnitTuple,
    Var,
    tag_term,
    type_of_term,
)

RESERVED = {
    "sort", "con", "fun", "var", "def", "main", "where",
    "id", "fail", "void", "all", "one", "reduce", "select", "spawn",
    "extend", "restrict", "guard", "TP", "TU",
}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
    | (?P<op>:=|->|<\+|\+>|<&|&>|[;:=+&!*@()\[\],])
    """,
    re.VERBOSE,
)


def tokenize(text):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError("unexpected character %r" % text[i], line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "name":
            tokens.append(("name", value, line, col))
        elif kind == "op":
            tokens.append(("op", value, line, col))
        newlines = value.count("\n")
        if newlines:
            line += newlines
            col = len(value) - value.rfind("\n")
        else:
            col += len(value)
        i = m.end()
    tokens.append(("eof", "", line, col))
    return tokens


class Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.i = 0
        self.type_params = ()  # tyvar scope of the def being parsed

    # -- token helpers ------------------------------------------------------

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, value):
        tok = self.peek()
        return tok[1] == value and tok[0] in ("op", "name")

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.next()
        if tok[1] != value:
            raise ParseError("expected %r, got %r" % (value, tok[1] or "end of input"),
                             tok[2], tok[3])
        return tok

    def expect_name(self, reserved_ok=False):
        tok = self.next()
        if tok[0] != "name" or (not reserved_ok and tok[1] in RESERVED):
            raise ParseError("expected a name, got %r" % (tok[1] or "end of input"),
                             tok[2], tok[3])
        return tok

    def pos(self):
        tok = self.peek()
        return (tok[2], tok[3])

    # -- terms --------------------------------------------------------------

    def parse_term(self):
        tok = self.peek()
        if tok[1] == "(":
            self.next()
            if self.at(")"):
                self.next()
                return UnitTuple()
            left = self.parse_term()
            self.expect(",")
            right = self.parse_term()
            self.expect(")")
            return Pair(left, right)
        if tok[0] == "name" and tok[1] not in RESERVED:
            self.next()
            name = tok[1]
            if self.at("("):
                self.next()
                args = [self.parse_term()]
                while self.at(","):
                    self.next()
                    args.append(self.parse_term())
                self.expect(")")
                return FunApp(name, tuple(args))
            # Constant vs variable is settled during resolution.
            return Var(name)
        raise ParseError("expected a term, got %r" % (tok[1] or "end of input"),
                         tok[2], tok[3])

    # -- types --------------------------------------------------------------

    def parse_ttype(self):
        tok = self.peek()
        if tok[1] == "(":
            self.next()
            if self.at(")"):
                self.next()
                return UNIT
            left = self.parse_ttype()
            self.expect(",")
            right = self.parse_ttype()
            self.expect(")")
            return PairType(left, right)
        if tok[0] == "name" and tok[1] not in RESERVED:
            self.next()
            if tok[1] in self.type_params:
                return TypeVar(tok[1])
            return Sort(tok[1])
        raise ParseError("expected a type, got %r" % (tok[1] or "end of input"),
                         tok[2], tok[3])

    def parse_stype(self):
        left = self._parse_stype_atom()
        if self.at("&"):
            self.next()
            return Amp(left, self.parse_stype())
        return left

    def _parse_stype_atom(self):
        tok = self.peek()
        if tok[1] == "TP":
            self.next()
            return TP_TYPE
        if tok[1] == "TU":
            self.next()
            self.expect("(")
            inner = self.parse_ttype()
            self.expect(")")
            return TU(inner)
        saved = self.i
        try:
            dom = self.parse_ttype()
            self.expect("->")
            cod = self.parse_ttype()
            return Arrow(dom, cod)
        except ParseError:
            self.i = saved
        if tok[1] == "(":
            self.next()
            inner = self.parse_stype()
            self.expect(")")
            return inner
        raise ParseError("expected a strategy type, got %r"
                         % (tok[1] or "end of input"), tok[2], tok[3])

    def parse_ctype(self, type_params):
        self.type_params = tuple(type_params)
        first = self.parse_stype()
        args = [first]
        while self.at("*"):
            self.next()
            args.append(self.parse_stype())
        if self.at("->"):
            self.next()
            result = self.parse_stype()
            return CombinatorType(tuple(type_params), tuple(args), result)
        if len(args) > 1:
            tok = self.peek()
            raise ParseError("expected '->' after argument types", tok[2], tok[3])
        return CombinatorType(tuple(type_params), (), first)

    # -- strategies ---------------------------------------------------------

    def parse_strat(self):
        return self._parse_amp_level()

    def _parse_amp_level(self):
        pos = self.pos()
        left = self._parse_choice_level()
        tok = self.peek()
        if tok[1] in ("&", "<&", "&>"):
            self.next()
            right = self._parse_amp_level()
            cls = {"&": S.AmpS, "<&": S.TLChoice, "&>": S.TRChoice}[tok[1]]
            return cls(left, right, pos)
        return left

    def _parse_choice_level(self):
        pos = self.pos()
        left = self._parse_seq_level()
        tok = self.peek()
        if tok[1] in ("+", "<+", "+>"):
            self.next()
            right = self._parse_choice_level()
            cls = {"+": S.Choice, "<+": S.LChoice, "+>": S.RChoice}[tok[1]]
            return cls(left, right, pos)
        return left

    _STRAT_KEYWORDS = {"id", "fail", "void", "all", "one", "reduce", "select",
                       "spawn", "extend", "restrict", "guard"}

    def _can_start_strat(self, tok):
        if tok[0] == "op":
            return tok[1] in ("(", "!")
        if tok[0] == "name":
            return tok[1] not in RESERVED or tok[1] in self._STRAT_KEYWORDS
        return False

    def _parse_seq_level(self):
        pos = self.pos()
        left = self._parse_prefix()
        # A ';' continues a sequence only if a strategy follows; otherwise
        # it is the item terminator and is left for the caller.
        if self.at(";") and self._can_start_strat(self.peek(1)):
            self.next()
            right = self._parse_seq_level()
            return S.Seq(left, right, pos)
        return left

    def _parse_prefix(self):
        tok = self.peek()
        if tok[1] == "!":
            pos = self.pos()
            self.next()
            return S.Neg(self._parse_prefix(), pos)
        return self._parse_primary()

    def _parse_primary(self):
        tok = self.peek()
        pos = (tok[2], tok[3])
        # A rewrite rule: term "->" rulebody.
        saved = self.i
        try:
            lhs = self.parse_term()
            if self.at("->"):
                self.next()
                body = self._parse_rulebody()
                return S.Rule(lhs, body, pos)
            self.i = saved
        except ParseError:
            self.i = saved
        word = tok[1]
        if word == "id":
            self.next()
            return S.Id(pos)
        if word == "fail":
            self.next()
            return S.Fail(pos)
        if word == "void":
            self.next()
            return S.Void(pos)
        if word in ("all", "one", "select"):
            self.next()
            self.expect("(")
            inner = self.parse_strat()
            self.expect(")")
            cls = {"all": S.All, "one": S.One, "select": S.Select}[word]
            return cls(inner, pos)
        if word in ("reduce", "spawn"):
            self.next()
            self.expect("(")
            a = self.parse_strat()
            self.expect(",")
            b = self.parse_strat()
            self.expect(")")
            if word == "reduce":
                return S.Reduce(a, b, pos)
            return S.Spawn(a, b, pos)
        if word in ("extend", "restrict"):
            self.next()
            self.expect("(")
            inner = self.parse_strat()
            self.expect(",")
            st = self.parse_stype()
            self.expect(")")
            cls = S.Extend if word == "extend" else S.Restrict
            return cls(inner, st, pos)
        if word == "guard":
            self.next()
            self.expect("(")
            tt = self.parse_ttype()
            self.expect(",")
            st = self.parse_stype()
            self.expect(")")
            return S.TypeGuard(tt, st, pos)
        if word == "(":
            self.next()
            if self.at(")"):
                self.next()
                return S.CongUnit(pos)
            inner = self.parse_strat()
            if self.at(","):
                self.next()
                right = self.parse_strat()
                self.expect(")")
                return S.CongPair(inner, right, pos)
            if self.at(":"):
                # "(" strat ":" stype ")" — annotation, as printed by the
                # elaborator.
                self.next()
                st = self.parse_stype()
                self.expect(")")
                return S.Annot(inner, st, pos)
            self.expect(")")
            return inner
        if tok[0] == "name" and word not in RESERVED:
            self.next()
            type_args = ()
            if self.at("["):
                self.next()
                targs = [self.parse_ttype()]
                while self.at(","):
                    self.next()
                    targs.append(self.parse_ttype())
                self.expect("]")
                type_args = tuple(targs)
            args = ()
            if self.at("("):
                self.next()
                lst = [self.parse_strat()]
                while self.at(","):
                    self.next()
                    lst.append(self.parse_strat())
                self.expect(")")
                args = tuple(lst)
            # Congruence vs call vs parameter is settled during resolution.
            return S.Call(word, type_args, args, pos)
        raise ParseError("expected a strategy, got %r" % (word or "end of input"),
                         tok[2], tok[3])

    def _parse_rulebody(self):
        result = self.parse_term()
        clauses = []
        while self.at("where"):
            self.next()
            var = self.expect_name()[1]
            self.expect(":=")
            strat = self.parse_strat()
            self.expect("@")
            arg = self.parse_term()
            clauses.append((var, strat, arg))
        body = S.Result(result)
        for var, strat, arg in reversed(clauses):
            body = S.Where(var, strat, arg, body)
        return body

    # -- items --------------------------------------------------------------

    def parse_items(self, ctx, definitions):
        """Parse declarations/definitions into ctx; return (defs, main)."""
        main = None
        while self.peek()[0] != "eof":
            tok = self.peek()
            word = tok[1]
            pos = (tok[2], tok[3])
            if word == "sort":
                self.next()
                name = self.expect_name()[1]
                self.expect(";")
                ctx.declare_sort(name, pos)
            elif word == "con":
                self.next()
                name = self.expect_name()[1]
                self.expect(":")
                sort = self.expect_name()[1]
                self.expect(";")
                ctx.declare_constant(name, Sort(sort), pos)
            elif word == "fun":
                self.next()
                name = self.expect_name()[1]
                self.expect(":")
                arg_sorts = [Sort(self.expect_name()[1])]
                while self.at("*"):
                    self.next()
                    arg_sorts.append(Sort(self.expect_name()[1]))
                self.expect("->")
                result = Sort(self.expect_name()[1])
                self.expect(";")
                ctx.declare_function(name, arg_sorts, result, pos)
            elif word == "var":
                self.next()
                name = self.expect_name()[1]
                self.expect(":")
                self.type_params = ()
                tt = self.parse_ttype()
                self.expect(";")
                ctx.declare_var(name, tt, pos)
            elif word == "def":
                self.next()
                name = self.expect_name()[1]
                tparams = ()
                if self.at("["):
                    self.next()
                    lst = [self.expect_name()[1]]
                    while self.at(","):
                        self.next()
                        lst.append(self.expect_name()[1])
                    self.expect("]")
                    tparams = tuple(lst)
                params = ()
                if self.at("("):
                    self.next()
                    lst = [self.expect_name()[1]]
                    while self.at(","):
                        self.next()
                        lst.append(self.expect_name()[1])
                    self.expect(")")
                    params = tuple(lst)
                self.expect(":")
                ctype = self.parse_ctype(tparams)
                self.expect("=")
                body = self.parse_strat()
                self.expect(";")
                self.type_params = ()
                if name in definitions:
                    raise DuplicateDefinition("duplicate definition of %s" % name,
                                              pos=pos)
                if len(ctype.arg_types) != len(params):
                    raise ParseError(
                        "definition %s declares %d parameters but its type has %d "
                        "argument types" % (name, len(params), len(ctype.arg_types)),
                        pos[0], pos[1])
                definitions[name] = S.Definition(name, tparams, params, ctype,
                                                 body, pos)
                ctx.declare_combinator(name, ctype, pos)
            elif word == "main":
                self.next()
                self.expect("=")
                self.type_params = ()
                main = self.parse_strat()
                self.expect(";")
            else:
                raise ParseError("expected a declaration, got %r"
                                 % (word or "end of input"), tok[2], tok[3])
        return main


# ---------------------------------------------------------------------------
# Name resolution


def _resolve_term(t, ctx, bound, pos):
    """Fix Constant/Var leaves and check variable binding (bound=None skips
    the binding check and instead collects lhs variables)."""
    if isinstance(t, Var):
        if t.name in ctx.constants:
            return Constant(t.name)
        if t.name in ctx.term_vars:
            if bound is not None and t.name not in bound:
                raise UnknownName("variable %s is not bound by the rule" % t.name,
                                  pos=pos)
            if bound is None:
                pass
            return t
        raise UnknownName("unknown symbol %s in term" % t.name, pos=pos)
    if isinstance(t, FunApp):
        return FunApp(t.name,
                      tuple(_resolve_term(a, ctx, bound, pos) for a in t.args))
    if isinstance(t, Pair):
        return Pair(_resolve_term(t.left, ctx, bound, pos),
                    _resolve_term(t.right, ctx, bound, pos))
    return t


def _term_vars(t, acc):
    if isinstance(t, Var):
        acc.add(t.name)
    elif isinstance(t, FunApp):
        for a in t.args:
            _term_vars(a, acc)
    elif isinstance(t, Pair):
        _term_vars(t.left, acc)
        _term_vars(t.right, acc)
    return acc


def _resolve_strat(s, ctx, params):
    rec = lambda x: _resolve_strat(x, ctx, params)
    if isinstance(s, S.Call):
        if s.name in params:
            if s.type_args or s.args:
                raise UnknownName(
                    "strategy parameter %s takes no arguments" % s.name, pos=s.pos)
            return S.ParamRef(s.name, s.pos)
        if s.name in ctx.constants:
            if s.type_args or s.args:
                raise UnknownName(
                    "constant congruence %s takes no arguments" % s.name, pos=s.pos)
            return S.CongCon(s.name, s.pos)
        if s.name in ctx.functions:
            if s.type_args:
                raise UnknownName(
                    "function congruence %s takes no type arguments" % s.name,
                    pos=s.pos)
            arity = len(ctx.functions[s.name][0])
            if len(s.args) != arity:
                raise UnknownName(
                    "congruence %s expects %d argument strategies, got %d"
                    % (s.name, arity, len(s.args)), pos=s.pos)
            return S.CongFun(s.name, tuple(rec(a) for a in s.args), s.pos)
        if s.name in ctx.combinators:
            ct = ctx.combinators[s.name]
            if len(s.args) != len(ct.arg_types):
                raise CallArityMismatch(
                    "%s expects %d arguments, got %d"
                    % (s.name, len(ct.arg_types), len(s.args)), pos=s.pos)
            if len(s.type_args) != len(ct.type_params):
                raise CallTypeArgMismatch(
                    "%s expects %d type arguments, got %d"
                    % (s.name, len(ct.type_params), len(s.type_args)), pos=s.pos)
            return S.Call(s.name, s.type_args, tuple(rec(a) for a in s.args), s.pos)
        raise UnknownName("unknown name %s" % s.name, pos=s.pos)
    if isinstance(s, S.Rule):
        lhs = _resolve_term(s.lhs, ctx, None, s.pos)
        bound = _term_vars(lhs, set())
        body = _resolve_body(s.body, ctx, params, set(bound), s.pos)
        return S.Rule(lhs, body, s.pos)
    if isinstance(s, (S.Id, S.Fail, S.Void, S.CongUnit, S.ParamRef,
                      S.CongCon, S.TypeGuard)):
        return s
    if isinstance(s, (S.Seq, S.Choice, S.LChoice, S.RChoice, S.CongPair,
                      S.Spawn, S.AmpS, S.TLChoice, S.TRChoice)):
        return type(s)(rec(s.left), rec(s.right), s.pos)
    if isinstance(s, (S.Neg, S.All, S.One, S.Select)):
        return type(s)(rec(s.arg), s.pos)
    if isinstance(s, S.Reduce):
        return S.Reduce(rec(s.splus), rec(s.child), s.pos)
    if isinstance(s, (S.Extend, S.Restrict, S.Annot)):
        return type(s)(rec(s.arg), s.stype, s.pos)
    if isinstance(s, S.CongFun):
        return S.CongFun(s.name, tuple(rec(a) for a in s.args), s.pos)
    raise TypeError("unexpected node %r" % (s,))


def _resolve_body(b, ctx, params, bound, pos):
    if isinstance(b, S.Result):
        return S.Result(_resolve_term(b.term, ctx, bound, pos))
    strat = _resolve_strat(b.strat, ctx, params)
    arg = _resolve_term(b.arg, ctx, bound, pos)
    if b.var in bound:
        raise UnknownName("where-clause rebinds variable %s" % b.var, pos=pos)
    if b.var not in ctx.term_vars:
        raise UnknownName("where-bound variable %s is not declared" % b.var,
                          pos=pos)
    bound = bound | {b.var}
    return S.Where(b.var, strat, arg, _resolve_body(b.rest, ctx, params, bound, pos))


# ---------------------------------------------------------------------------
# Entry points


def parse_program(text, prelude=None, require_main=True):
    """Parse a program file; `prelude` is a Program whose declarations and
    definitions are visible to the parsed text."""
    ctx = Context()
    definitions = {}
    if prelude is not None:
        p = prelude.context
        ctx.sorts = set(p.sorts)
        ctx.constants = dict(p.constants)
        ctx.functions = dict(p.functions)
        ctx.term_vars = dict(p.term_vars)
        ctx.combinators = dict(p.combinators)
        ctx.decls = list(p.decls)
        definitions.update(prelude.definitions)
    parser = Parser(text)
    main = parser.parse_items(ctx, definitions)
    if require_main and main is None:
        tok = parser.peek()
        raise ParseError("missing main strategy", tok[2], tok[3])
    resolved = {}
    for name, d in definitions.items():
        if prelude is not None and name in prelude.definitions:
            resolved[name] = d  # already resolved when the prelude was loaded
            continue
        body = _resolve_strat(d.body, ctx, set(d.params))
        resolved[name] = S.Definition(d.name, d.type_params, d.params, d.ctype,
                                      body, d.pos)
    if main is not None:
        main = _resolve_strat(main, ctx, set())
    return S.Program(ctx, resolved, main)


def parse_term(text, ctx):
    """Parse a standalone ground term, type-check it, and tag it."""
    parser = Parser(text)
    t = parser.parse_term()
    tok = parser.peek()
    if tok[0] != "eof":
        raise ParseError("trailing input after term: %r" % tok[1], tok[2], tok[3])
    t = _resolve_term(t, ctx, None, None)
    type_of_term(ctx, t)
    return tag_term(ctx, t)
