"""Static elaboration: sugar expansion, pattern tagging, and extend
annotation, so that evaluation dispatches on tags alone.
"""

from . import syntax as S
from .terms import Arrow, tag_term
from .typecheck import expand_tlchoice, type_of_strategy


def desugar(ctx, s):
    """Expand <+, +>, guard, <& and &>. The type-dependent forms need the
    left operand's type, hence the context argument."""
    rec = lambda x: desugar(ctx, x)
    if isinstance(s, S.LChoice):
        left = rec(s.left)
        right = rec(s.right)
        return S.Choice(left, S.Seq(S.Neg(left, s.pos), right, s.pos), s.pos)
    if isinstance(s, S.RChoice):
        return desugar(ctx, S.LChoice(s.right, s.left, s.pos))
    if isinstance(s, S.TypeGuard):
        return S.Extend(S.Restrict(S.Id(s.pos), Arrow(s.ttype, s.ttype), s.pos),
                        s.stype, s.pos)
    if isinstance(s, S.TLChoice):
        left = rec(s.left)
        right = rec(s.right)
        p1 = type_of_strategy(ctx, left)
        p2 = type_of_strategy(ctx, right)
        return expand_tlchoice(ctx, left, right, p1, p2, s.pos)
    if isinstance(s, S.TRChoice):
        return desugar(ctx, S.TLChoice(s.right, s.left, s.pos))
    return _map_children(s, rec, lambda b: _desugar_body(ctx, b))


def _desugar_body(ctx, b):
    if isinstance(b, S.Result):
        return b
    return S.Where(b.var, desugar(ctx, b.strat), b.arg, _desugar_body(ctx, b.rest))


def elaborate(ctx, s):
    """Annotate every extend argument with its inferred type and tag all
    rule terms. Expects desugared input; idempotent."""
    rec = lambda x: elaborate(ctx, x)
    if isinstance(s, S.Extend):
        child = rec(s.arg)
        if not isinstance(child, S.Annot):
            child = S.Annot(child, type_of_strategy(ctx, child), s.pos)
        return S.Extend(child, s.stype, s.pos)
    if isinstance(s, S.Rule):
        return S.Rule(tag_term(ctx, s.lhs), _elaborate_body(ctx, s.body), s.pos)
    return _map_children(s, rec, lambda b: _elaborate_body(ctx, b))


def _elaborate_body(ctx, b):
    if isinstance(b, S.Result):
        return S.Result(tag_term(ctx, b.term))
    return S.Where(b.var, elaborate(ctx, b.strat), tag_term(ctx, b.arg),
                   _elaborate_body(ctx, b.rest))


def _map_children(s, rec, rec_body):
    """Homomorphic rebuild of one strategy node."""
    if isinstance(s, S.Rule):
        return S.Rule(s.lhs, rec_body(s.body), s.pos)
    if isinstance(s, (S.Id, S.Fail, S.Void, S.CongCon, S.CongUnit,
                      S.ParamRef, S.TypeGuard)):
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
    if isinstance(s, S.Call):
        return S.Call(s.name, s.type_args, tuple(rec(a) for a in s.args), s.pos)
    raise TypeError("not a strategy: %r" % (s,))


def elaborate_program(program):
    """Desugar and elaborate all definition bodies and main."""
    ctx = program.context
    defs = {}
    for name, d in program.definitions.items():
        sub = ctx.with_params(d.type_params,
                              dict(zip(d.params, d.ctype.arg_types)))
        body = elaborate(sub, desugar(sub, d.body))
        defs[name] = S.Definition(d.name, d.type_params, d.params, d.ctype,
                                  body, d.pos)
    main = program.main
    if main is not None:
        main = elaborate(ctx, desugar(ctx, main))
    return S.Program(ctx, defs, main)
