"""Typing judgements: well-formedness, genericity, negation/composition of
types, greatest lower bounds, strategy and program typing.

Every strategy expression has at most one type (implicit restriction is
resolved at composition/choice/application sites, so checking stays
deterministic).
"""

from . import syntax as S
from .errors import (
    AmpOverlap,
    CallTypeArgMismatch,
    ExtendNotInstance,
    GenericDomainUndefined,
    InapplicableType,
    NoLowerBound,
    NotComposable,
    NotNegatable,
    OverlappingAmpDomains,
    RestrictNotInstance,
    StaticError,
    TypeError_,
    UnboundTypeVar,
    UndeclaredSort,
    UnknownName,
)
from .terms import (
    Amp,
    Arrow,
    PairType,
    Sort,
    TP,
    TP_TYPE,
    TU,
    TypeVar,
    Unit,
    amp_branches,
    amp_of,
    check_context,
    is_generic,
    type_of_term,
    types_equal,
)


# ---------------------------------------------------------------------------
# Well-formedness


def wf_term_type(ctx, tt, pos=None):
    if isinstance(tt, Sort):
        if tt.name not in ctx.sorts:
            raise UndeclaredSort("undeclared sort %s" % tt.name, pos=pos)
        return
    if isinstance(tt, Unit):
        return
    if isinstance(tt, PairType):
        wf_term_type(ctx, tt.left, pos)
        wf_term_type(ctx, tt.right, pos)
        return
    if isinstance(tt, TypeVar):
        if tt.name not in ctx.type_vars:
            raise UnboundTypeVar("type variable %s is not in scope" % tt.name,
                                 pos=pos)
        return
    raise TypeError("not a term type: %r" % (tt,))


def wf_strategy_type(ctx, pi, pos=None):
    if isinstance(pi, Arrow):
        wf_term_type(ctx, pi.dom, pos)
        wf_term_type(ctx, pi.cod, pos)
        return
    if isinstance(pi, TP):
        return
    if isinstance(pi, TU):
        wf_term_type(ctx, pi.result, pos)
        return
    if isinstance(pi, Amp):
        branches = amp_branches(pi)
        seen = set()
        for b in branches:
            if is_generic(b):
                raise TypeError_(
                    "overloaded sum contains a generic type %r" % (b,),
                    pos=pos, rule="pi.4")
            wf_strategy_type(ctx, b, pos)
            for d in domains(b):
                if d in seen:
                    raise OverlappingAmpDomains(
                        "overloaded branches share the domain %r" % (d,),
                        pos=pos)
                seen.add(d)
        return
    raise TypeError("not a strategy type: %r" % (pi,))


def domains(pi, pos=None):
    """Domain set of a non-generic strategy type."""
    if isinstance(pi, Arrow):
        return frozenset([pi.dom])
    if isinstance(pi, Amp):
        return frozenset().union(*(domains(b, pos) for b in amp_branches(pi)))
    raise GenericDomainUndefined("domain of generic type %r is undefined" % (pi,),
                                 pos=pos)


# ---------------------------------------------------------------------------
# Genericity ordering


def generically_less(ctx, p, q):
    """Strict 'is an instance of' ordering between strategy types."""
    if isinstance(q, TP):
        if isinstance(p, Arrow):
            return p.dom == p.cod
        if isinstance(p, Amp):
            return all(generically_less(ctx, b, q) for b in amp_branches(p))
        return False
    if isinstance(q, TU):
        if isinstance(p, Arrow):
            return p.cod == q.result
        if isinstance(p, Amp):
            return all(generically_less(ctx, b, q) for b in amp_branches(p))
        return False
    if isinstance(q, Amp):
        if isinstance(p, (Arrow, Amp)):
            return set(amp_branches(p)) < set(amp_branches(q))
        return False
    return False


def generically_leq(ctx, p, q):
    return types_equal(p, q) or generically_less(ctx, p, q)


# ---------------------------------------------------------------------------
# Negation and composition of types


def negatable(ctx, pi, pos=None):
    if isinstance(pi, Arrow):
        return Arrow(pi.dom, pi.dom)
    if is_generic(pi):
        return TP_TYPE
    raise NotNegatable("cannot negate overloaded type %r" % (pi,), pos=pos)


def composable(ctx, p1, p2, pos=None):
    if isinstance(p1, Arrow):
        if isinstance(p2, Arrow):
            if p1.cod == p2.dom:
                return Arrow(p1.dom, p2.cod)
            raise NotComposable(
                "cannot compose %r with %r" % (p1, p2), pos=pos, rule="comp.1")
        if isinstance(p2, TP):
            return p1
        if isinstance(p2, TU):
            # Implicit restriction of the type-unifying right operand.
            return Arrow(p1.dom, p2.result)
    if isinstance(p1, TP):
        if is_generic(p2):
            return p2
        if isinstance(p2, Arrow):
            return p2
    if isinstance(p1, TU):
        if isinstance(p2, Arrow) and p2.dom == p1.result:
            return TU(p2.cod)
    if isinstance(p1, Amp) and isinstance(p2, Amp):
        right = {b.dom: b for b in amp_branches(p2)}
        out = []
        for b in amp_branches(p1):
            partner = right.get(b.cod)
            if partner is None:
                raise NotComposable(
                    "no overloaded branch of %r accepts %r" % (p2, b.cod),
                    pos=pos, rule="comp.6")
            out.append(Arrow(b.dom, partner.cod))
        return amp_of(out)
    raise NotComposable("cannot compose %r with %r" % (p1, p2), pos=pos)


# ---------------------------------------------------------------------------
# Greatest lower bounds


def glb(ctx, p1, p2, pos=None):
    if types_equal(p1, p2):
        return p1
    if generically_less(ctx, p1, p2):
        return p1
    if generically_less(ctx, p2, p1):
        return p2
    nongen1 = isinstance(p1, (Arrow, Amp))
    nongen2 = isinstance(p2, (Arrow, Amp))
    if nongen1 and nongen2:
        b2 = set(amp_branches(p2))
        common = [b for b in amp_branches(p1) if b in b2]
        if common:
            return amp_of(common)
    elif nongen1 != nongen2:
        m, g = (p1, p2) if nongen1 else (p2, p1)
        sub = [b for b in amp_branches(m) if generically_less(ctx, b, g)]
        if sub:
            return amp_of(sub)
    raise NoLowerBound("types %r and %r have no lower bound" % (p1, p2), pos=pos)


# ---------------------------------------------------------------------------
# Application typing


def apply_type(ctx, pi, tau, pos=None):
    """The unique codomain for applying a strategy of type pi to a term of
    type tau."""
    if isinstance(pi, Arrow):
        if pi.dom == tau:
            return pi.cod
    elif isinstance(pi, TP):
        return tau
    elif isinstance(pi, TU):
        return pi.result
    elif isinstance(pi, Amp):
        for b in amp_branches(pi):
            if b.dom == tau:
                return b.cod
    raise InapplicableType(
        "strategy of type %r is not applicable to a term of type %r"
        % (pi, tau), pos=pos)


def type_of_application(ctx, s, t):
    pi = type_of_strategy(ctx, s)
    tau = type_of_term(ctx, t)
    return apply_type(ctx, pi, tau)


# ---------------------------------------------------------------------------
# Strategy typing


def type_of_strategy(ctx, s):
    try:
        return _type_of(ctx, s)
    except StaticError as e:
        if e.pos is None and s.pos is not None:
            e.pos = s.pos
        raise


def _substitute_type_vars(subst, tt):
    if isinstance(tt, TypeVar):
        return subst.get(tt.name, tt)
    if isinstance(tt, PairType):
        return PairType(_substitute_type_vars(subst, tt.left),
                        _substitute_type_vars(subst, tt.right))
    return tt


def substitute_stype(subst, pi):
    if isinstance(pi, Arrow):
        return Arrow(_substitute_type_vars(subst, pi.dom),
                     _substitute_type_vars(subst, pi.cod))
    if isinstance(pi, TP):
        return pi
    if isinstance(pi, TU):
        return TU(_substitute_type_vars(subst, pi.result))
    if isinstance(pi, Amp):
        return Amp(substitute_stype(subst, pi.left),
                   substitute_stype(subst, pi.right))
    raise TypeError("not a strategy type: %r" % (pi,))


def expand_tlchoice(ctx, s1, s2, pi1, pi2, pos=None):
    """The expansion of s1 <& s2 given the operand types."""
    guard = S.Extend(S.Restrict(S.Id(pos), Arrow(pi1.dom, pi1.dom), pos),
                     TP_TYPE, pos)
    return S.Choice(S.Extend(s1, pi2, pos),
                    S.Seq(S.Neg(guard, pos), s2, pos), pos)


def _type_of(ctx, s):
    pos = s.pos
    if isinstance(s, (S.Id, S.Fail)):
        return TP_TYPE
    if isinstance(s, S.Rule):
        tau_l = type_of_term(ctx, s.lhs)
        tau_r = _type_of_body(ctx, s.body, pos)
        return Arrow(tau_l, tau_r)
    if isinstance(s, S.Seq):
        return composable(ctx, type_of_strategy(ctx, s.left),
                          type_of_strategy(ctx, s.right), pos)
    if isinstance(s, S.Choice):
        return glb(ctx, type_of_strategy(ctx, s.left),
                   type_of_strategy(ctx, s.right), pos)
    if isinstance(s, S.LChoice):
        p1 = type_of_strategy(ctx, s.left)
        p2 = type_of_strategy(ctx, s.right)
        return glb(ctx, p1, composable(ctx, negatable(ctx, p1, pos), p2, pos), pos)
    if isinstance(s, S.RChoice):
        return _type_of(ctx, S.LChoice(s.right, s.left, pos))
    if isinstance(s, S.Neg):
        return negatable(ctx, type_of_strategy(ctx, s.arg), pos)
    if isinstance(s, S.CongCon):
        sort = ctx.constants[s.name]
        return Arrow(sort, sort)
    if isinstance(s, S.CongFun):
        arg_sorts, result = ctx.functions[s.name]
        for i, (a, sigma) in enumerate(zip(s.args, arg_sorts)):
            pa = type_of_strategy(ctx, a)
            if not generically_leq(ctx, Arrow(sigma, sigma), pa):
                raise TypeError_(
                    "argument %d of congruence %s must admit %r -> %r, has %r"
                    % (i + 1, s.name, sigma, sigma, pa), pos=pos, rule="cong.2")
        return Arrow(result, result)
    if isinstance(s, S.CongUnit):
        u = Unit()
        return Arrow(u, u)
    if isinstance(s, S.CongPair):
        p1 = type_of_strategy(ctx, s.left)
        p2 = type_of_strategy(ctx, s.right)
        if not isinstance(p1, Arrow) or not isinstance(p2, Arrow):
            raise TypeError_(
                "pair congruence needs many-sorted components, has %r and %r"
                % (p1, p2), pos=pos, rule="cong.4")
        return Arrow(PairType(p1.dom, p2.dom), PairType(p1.cod, p2.cod))
    if isinstance(s, (S.All, S.One)):
        pa = type_of_strategy(ctx, s.arg)
        if not isinstance(pa, TP):
            raise TypeError_(
                "%s needs a type-preserving argument, has %r"
                % ("all" if isinstance(s, S.All) else "one", pa),
                pos=pos, rule="all" if isinstance(s, S.All) else "one")
        return TP_TYPE
    if isinstance(s, S.Reduce):
        pc = type_of_strategy(ctx, s.child)
        if not isinstance(pc, TU):
            raise TypeError_(
                "reduce needs a type-unifying child strategy, has %r" % (pc,),
                pos=pos, rule="red")
        tau = pc.result
        want = Arrow(PairType(tau, tau), tau)
        pp = type_of_strategy(ctx, s.splus)
        if not generically_leq(ctx, want, pp):
            raise TypeError_(
                "reduce composer must admit %r, has %r" % (want, pp),
                pos=pos, rule="red")
        return pc
    if isinstance(s, S.Select):
        pa = type_of_strategy(ctx, s.arg)
        if not isinstance(pa, TU):
            raise TypeError_(
                "select needs a type-unifying argument, has %r" % (pa,),
                pos=pos, rule="sel")
        return pa
    if isinstance(s, S.Void):
        return TU(Unit())
    if isinstance(s, S.Spawn):
        p1 = type_of_strategy(ctx, s.left)
        p2 = type_of_strategy(ctx, s.right)
        if not isinstance(p1, TU) or not isinstance(p2, TU):
            raise TypeError_(
                "spawn needs type-unifying operands, has %r and %r" % (p1, p2),
                pos=pos, rule="spawn")
        return TU(PairType(p1.result, p2.result))
    if isinstance(s, S.Extend):
        wf_strategy_type(ctx, s.stype, pos)
        inner = type_of_strategy(ctx, s.arg)
        if not generically_less(ctx, inner, s.stype):
            raise ExtendNotInstance(
                "%r is not an instance of %r" % (inner, s.stype), pos=pos)
        return s.stype
    if isinstance(s, S.Restrict):
        wf_strategy_type(ctx, s.stype, pos)
        inner = type_of_strategy(ctx, s.arg)
        if not generically_less(ctx, s.stype, inner):
            raise RestrictNotInstance(
                "%r is not an instance of %r" % (s.stype, inner), pos=pos)
        return s.stype
    if isinstance(s, S.Annot):
        wf_strategy_type(ctx, s.stype, pos)
        inner = type_of_strategy(ctx, s.arg)
        if not types_equal(inner, s.stype):
            raise TypeError_(
                "annotation %r does not match actual type %r" % (s.stype, inner),
                pos=pos, rule="annot")
        return s.stype
    if isinstance(s, S.AmpS):
        p1 = type_of_strategy(ctx, s.left)
        p2 = type_of_strategy(ctx, s.right)
        combined = amp_of(amp_branches(p1) + amp_branches(p2))
        try:
            wf_strategy_type(ctx, combined, pos)
        except StaticError as e:
            raise AmpOverlap(e.message, pos=pos)
        return combined
    if isinstance(s, S.TypeGuard):
        wf_term_type(ctx, s.ttype, pos)
        wf_strategy_type(ctx, s.stype, pos)
        arrow = Arrow(s.ttype, s.ttype)
        if not generically_less(ctx, arrow, s.stype):
            raise ExtendNotInstance(
                "%r is not an instance of %r" % (arrow, s.stype), pos=pos)
        return s.stype
    if isinstance(s, S.TLChoice):
        p1 = type_of_strategy(ctx, s.left)
        if not isinstance(p1, Arrow):
            raise TypeError_(
                "left operand of <& must be many-sorted, has %r" % (p1,),
                pos=pos, rule="extend")
        p2 = type_of_strategy(ctx, s.right)
        return type_of_strategy(
            ctx, expand_tlchoice(ctx, s.left, s.right, p1, p2, pos))
    if isinstance(s, S.TRChoice):
        return _type_of(ctx, S.TLChoice(s.right, s.left, pos))
    if isinstance(s, S.ParamRef):
        if s.name not in ctx.strategy_params:
            raise TypeError_("unknown strategy parameter %s" % s.name,
                             pos=pos, rule="arg")
        return ctx.strategy_params[s.name]
    if isinstance(s, S.Call):
        ct = ctx.combinators.get(s.name)
        if ct is None:
            raise UnknownName("unknown combinator %s" % s.name, pos=pos)
        if len(s.type_args) != len(ct.type_params):
            raise CallTypeArgMismatch(
                "%s expects %d type arguments, got %d"
                % (s.name, len(ct.type_params), len(s.type_args)), pos=pos)
        for ta in s.type_args:
            wf_term_type(ctx, ta, pos)
        subst = dict(zip(ct.type_params, s.type_args))
        for i, (a, want) in enumerate(zip(s.args, ct.arg_types)):
            want = substitute_stype(subst, want)
            wf_strategy_type(ctx, want, pos)
            pa = type_of_strategy(ctx, a)
            if not types_equal(pa, want):
                raise TypeError_(
                    "argument %d of %s must have type %r, has %r"
                    % (i + 1, s.name, want, pa), pos=pos, rule="comb")
        result = substitute_stype(subst, ct.result_type)
        wf_strategy_type(ctx, result, pos)
        return result
    raise TypeError("not a strategy: %r" % (s,))


def _type_of_body(ctx, body, pos):
    if isinstance(body, S.Result):
        return type_of_term(ctx, body.term)
    tau_u = type_of_term(ctx, body.arg)
    pi_s = type_of_strategy(ctx, body.strat)
    tau_x = apply_type(ctx, pi_s, tau_u, pos)
    declared = ctx.term_vars[body.var]
    if declared != tau_x:
        raise TypeError_(
            "where-clause binds %s : %r but the variable is declared %r"
            % (body.var, tau_x, declared), pos=pos, rule="apply")
    return _type_of_body(ctx, body.rest, pos)


# ---------------------------------------------------------------------------
# Program checking


def check_program(program):
    """Return (diagnostics, main_type); main_type is None when checking
    failed anywhere."""
    ctx = program.context
    diags = list(check_context(ctx))
    for d in program.definitions.values():
        sub = ctx.with_params(d.type_params,
                              dict(zip(d.params, d.ctype.arg_types)))
        try:
            for at in d.ctype.arg_types:
                wf_strategy_type(sub, at, d.pos)
            wf_strategy_type(sub, d.ctype.result_type, d.pos)
            body_type = type_of_strategy(sub, d.body)
            if not types_equal(body_type, d.ctype.result_type):
                raise TypeError_(
                    "body of %s has type %r, declared %r"
                    % (d.name, body_type, d.ctype.result_type),
                    pos=d.pos, rule="def.3")
        except StaticError as e:
            diags.append(e)
    main_type = None
    if program.main is not None:
        try:
            main_type = type_of_strategy(ctx, program.main)
        except StaticError as e:
            diags.append(e)
    if diags:
        return diags, None
    return [], main_type
