"""Rendering of terms, types, strategies, and whole programs.

The output re-parses to the same abstract syntax (round trip).
"""

from . import syntax as S
from .terms import (
    Amp,
    Arrow,
    Constant,
    FunApp,
    Pair,
    PairType,
    Sort,
    TP,
    TU,
    TypeVar,
    Unit,
    UnitTuple,
    Var,
)


def render_term(t):
    if isinstance(t, (Constant, Var)):
        return t.name
    if isinstance(t, FunApp):
        return "%s(%s)" % (t.name, ",".join(render_term(a) for a in t.args))
    if isinstance(t, UnitTuple):
        return "()"
    if isinstance(t, Pair):
        return "(%s,%s)" % (render_term(t.left), render_term(t.right))
    raise TypeError("not a term: %r" % (t,))


def render_ttype(tt):
    if isinstance(tt, (Sort, TypeVar)):
        return tt.name
    if isinstance(tt, Unit):
        return "()"
    if isinstance(tt, PairType):
        return "(%s,%s)" % (render_ttype(tt.left), render_ttype(tt.right))
    raise TypeError("not a term type: %r" % (tt,))


def render_stype(pi):
    if isinstance(pi, Arrow):
        return "%s -> %s" % (render_ttype(pi.dom), render_ttype(pi.cod))
    if isinstance(pi, TP):
        return "TP"
    if isinstance(pi, TU):
        return "TU(%s)" % render_ttype(pi.result)
    if isinstance(pi, Amp):
        return "%s & %s" % (render_stype(pi.left), render_stype(pi.right))
    raise TypeError("not a strategy type: %r" % (pi,))


# Precedence levels: 1 = &-family, 2 = +-family, 3 = ;, 4 = prefix !,
# 5 = primary. A node is parenthesized when its level is below the
# context's required level.

_BINOPS = {
    S.AmpS: ("&", 1),
    S.TLChoice: ("<&", 1),
    S.TRChoice: ("&>", 1),
    S.Choice: ("+", 2),
    S.LChoice: ("<+", 2),
    S.RChoice: ("+>", 2),
    S.Seq: (";", 3),
}


def render_strat(s, level=0):
    text, own = _render(s)
    if own < level:
        return "(%s)" % text
    return text


def _render(s):
    cls = type(s)
    if cls in _BINOPS:
        op, lvl = _BINOPS[cls]
        left = render_strat(s.left, lvl + 1)
        right = render_strat(s.right, lvl)
        return "%s %s %s" % (left, op, right), lvl
    if isinstance(s, S.Rule):
        body = s.body
        clauses = []
        while isinstance(body, S.Where):
            clauses.append(" where %s := %s @ %s"
                           % (body.var, render_strat(body.strat, 1),
                              render_term(body.arg)))
            body = body.rest
        text = "%s -> %s%s" % (render_term(s.lhs), render_term(body.term),
                               "".join(clauses))
        # A where-clause strategy would swallow a following operator, so
        # such rules always get parentheses in operator context.
        return text, 5 if not clauses else 0
    if isinstance(s, S.Id):
        return "id", 5
    if isinstance(s, S.Fail):
        return "fail", 5
    if isinstance(s, S.Void):
        return "void", 5
    if isinstance(s, S.Neg):
        return "!%s" % render_strat(s.arg, 5), 4
    if isinstance(s, S.CongCon):
        return s.name, 5
    if isinstance(s, S.CongFun):
        return "%s(%s)" % (s.name, ",".join(render_strat(a, 1) for a in s.args)), 5
    if isinstance(s, S.CongUnit):
        return "()", 5
    if isinstance(s, S.CongPair):
        return "(%s,%s)" % (render_strat(s.left, 1), render_strat(s.right, 1)), 5
    if isinstance(s, S.All):
        return "all(%s)" % render_strat(s.arg, 1), 5
    if isinstance(s, S.One):
        return "one(%s)" % render_strat(s.arg, 1), 5
    if isinstance(s, S.Select):
        return "select(%s)" % render_strat(s.arg, 1), 5
    if isinstance(s, S.Reduce):
        return "reduce(%s,%s)" % (render_strat(s.splus, 1),
                                  render_strat(s.child, 1)), 5
    if isinstance(s, S.Spawn):
        return "spawn(%s,%s)" % (render_strat(s.left, 1),
                                 render_strat(s.right, 1)), 5
    if isinstance(s, S.Extend):
        return "extend(%s, %s)" % (render_strat(s.arg, 1),
                                   render_stype(s.stype)), 5
    if isinstance(s, S.Restrict):
        return "restrict(%s, %s)" % (render_strat(s.arg, 1),
                                     render_stype(s.stype)), 5
    if isinstance(s, S.Annot):
        return "(%s : %s)" % (render_strat(s.arg, 1), render_stype(s.stype)), 5
    if isinstance(s, S.TypeGuard):
        return "guard(%s, %s)" % (render_ttype(s.ttype),
                                  render_stype(s.stype)), 5
    if isinstance(s, S.ParamRef):
        return s.name, 5
    if isinstance(s, S.Call):
        text = s.name
        if s.type_args:
            text += "[%s]" % ",".join(render_ttype(t) for t in s.type_args)
        if s.args:
            text += "(%s)" % ",".join(render_strat(a, 1) for a in s.args)
        return text, 5
    raise TypeError("not a strategy: %r" % (s,))


def render_ctype(ct):
    def arg(pi):
        text = render_stype(pi)
        if isinstance(pi, (Arrow, Amp)):
            return "(%s)" % text
        return text

    if ct.arg_types:
        return "%s -> %s" % (" * ".join(arg(a) for a in ct.arg_types),
                             render_stype(ct.result_type))
    return render_stype(ct.result_type)


def render_program(program, skip_defs=()):
    """Render a whole program in source syntax; `skip_defs` suppresses
    definitions supplied by a prelude that the reader will load anyway."""
    ctx = program.context
    lines = []
    skip_decl = set(skip_defs)
    for kind, name, _pos in ctx.decls:
        if kind == "sort":
            lines.append("sort %s;" % name)
        elif name in skip_decl:
            continue
        elif name in ctx.constants:
            lines.append("con %s : %s;" % (name, ctx.constants[name].name))
        elif name in ctx.functions:
            arg_sorts, result = ctx.functions[name]
            lines.append("fun %s : %s -> %s;"
                         % (name, " * ".join(s.name for s in arg_sorts),
                            result.name))
        elif name in ctx.term_vars:
            lines.append("var %s : %s;" % (name, render_ttype(ctx.term_vars[name])))
    for name, d in program.definitions.items():
        if name in skip_decl:
            continue
        head = "def %s" % name
        if d.type_params:
            head += "[%s]" % ",".join(d.type_params)
        if d.params:
            head += "(%s)" % ",".join(d.params)
        lines.append("%s : %s = %s;" % (head, render_ctype(d.ctype),
                                        render_strat(d.body)))
    if program.main is not None:
        lines.append("main = %s;" % render_strat(program.main))
    return "\n".join(lines) + "\n"
