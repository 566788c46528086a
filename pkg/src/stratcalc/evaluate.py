"""Big-step evaluation of strategy applications.

Failure is a result (None internally, Failure at the API); engine-level
problems (fuel, unbound combinators, subject-reduction breaches) surface
as EngineError outcomes, never as Failure.
"""

from dataclasses import dataclass, field

from . import syntax as S
from .errors import (
    FuelExhausted,
    InternalTypeViolation,
    StaticError,
    UnboundCombinator,
)
from .terms import (
    Constant,
    FAILURE,
    FunApp,
    Ok,
    Pair,
    PairType,
    UNIT,
    UnitTuple,
    Var,
    children,
    get_tag,
    is_ground,
    match,
    substitute,
    tag_term,
)
from .typecheck import (
    _substitute_type_vars,
    domains,
    substitute_stype,
    type_of_strategy,
)


@dataclass
class EvalConfig:
    fuel: int = 100000  # 0 means unlimited
    trace: bool = False


@dataclass
class EngineFailure:
    kind: str
    detail: str


@dataclass
class EvalState:
    ctx: object = None
    defs: dict = field(default_factory=dict)
    cfg: EvalConfig = field(default_factory=EvalConfig)
    fuel: object = None  # remaining expansions, None = unlimited
    depth: int = 0
    trace_lines: list = field(default_factory=list)
    amp_dispatches: int = 0
    amp_branch_evals: int = 0
    _type_cache: dict = field(default_factory=dict)

    def runtime_type(self, s):
        key = id(s)
        pi = self._type_cache.get(key)
        if pi is None:
            try:
                pi = type_of_strategy(self.ctx, s)
            except StaticError as e:
                raise InternalTypeViolation(
                    "runtime typing failed: %s" % e.message)
            self._type_cache[key] = (pi, s)  # keep s alive for id() stability
        else:
            pi = pi[0]
        return pi


_HEADS = {
    S.Rule: "rule", S.Id: "id", S.Fail: "fail", S.Seq: ";", S.Choice: "+",
    S.LChoice: "<+", S.RChoice: "+>", S.Neg: "!", S.CongUnit: "()",
    S.CongPair: "(,)", S.All: "all", S.One: "one", S.Reduce: "reduce",
    S.Select: "select", S.Void: "void", S.Spawn: "spawn", S.Extend: "extend",
    S.Restrict: "restrict", S.Annot: ":", S.AmpS: "&", S.TypeGuard: "guard",
    S.TLChoice: "<&", S.TRChoice: "&>",
}


def strat_head(s):
    if isinstance(s, (S.Call, S.CongCon, S.CongFun, S.ParamRef)):
        return s.name
    return _HEADS.get(type(s), type(s).__name__)


def term_head(t):
    if isinstance(t, (Constant, FunApp, Var)):
        return t.name
    if isinstance(t, UnitTuple):
        return "()"
    return "(,)"


_TAGS = {
    S.Rule: "rule", S.Id: "id", S.Fail: "fail", S.Seq: "seq",
    S.Choice: "choice", S.LChoice: "choice", S.RChoice: "choice",
    S.Neg: "neg", S.CongCon: "cong", S.CongFun: "cong", S.CongUnit: "cong",
    S.CongPair: "cong", S.All: "all", S.One: "one", S.Reduce: "red",
    S.Select: "sel", S.Void: "void", S.Spawn: "spawn", S.Extend: "extend",
    S.Restrict: "restrict", S.Annot: "annot", S.AmpS: "amp",
    S.TypeGuard: "guard", S.TLChoice: "choice", S.TRChoice: "choice",
    S.Call: "comb", S.ParamRef: "arg",
}


def _eval(st, s, t):
    if st.cfg.trace:
        st.depth += 1
        result = _eval_node(st, s, t)
        st.depth -= 1
        st.trace_lines.append(
            "%s%s %s @ %s => %s"
            % ("  " * st.depth, _TAGS.get(type(s), "?"), strat_head(s),
               term_head(t), "fail" if result is None else "ok"))
        return result
    return _eval_node(st, s, t)


def _eval_node(st, s, t):
    if isinstance(s, S.Id):
        return t
    if isinstance(s, S.Fail):
        return None
    if isinstance(s, S.Void):
        return UnitTuple(UNIT)
    if isinstance(s, S.Rule):
        theta = match(s.lhs, t)
        if theta is None:
            return None
        return _eval_body(st, s.body, theta)
    if isinstance(s, S.Seq):
        mid = _eval(st, s.left, t)
        if mid is None:
            return None
        return _eval(st, s.right, mid)
    if isinstance(s, S.Choice):
        out = _eval(st, s.left, t)
        if out is None:
            return _eval(st, s.right, t)
        return out
    if isinstance(s, S.LChoice):
        # Sugar evaluated by its expansion s1 + (!s1 ; s2).
        out = _eval(st, s.left, t)
        if out is None:
            return _eval(st, s.right, t)
        return out
    if isinstance(s, S.RChoice):
        return _eval_node(st, S.LChoice(s.right, s.left, s.pos), t)
    if isinstance(s, S.Neg):
        out = _eval(st, s.arg, t)
        return t if out is None else None
    if isinstance(s, S.CongCon):
        if isinstance(t, Constant) and t.name == s.name:
            return t
        return None
    if isinstance(s, S.CongFun):
        if not isinstance(t, FunApp) or t.name != s.name:
            return None
        if len(t.args) != len(s.args):
            raise InternalTypeViolation("congruence arity mismatch on %s" % s.name)
        out = []
        for sub, c in zip(s.args, t.args):
            r = _eval(st, sub, c)
            if r is None:
                return None
            out.append(r)
        return FunApp(t.name, tuple(out), t.tag)
    if isinstance(s, S.CongUnit):
        return t if isinstance(t, UnitTuple) else None
    if isinstance(s, S.CongPair):
        if not isinstance(t, Pair):
            return None
        left = _eval(st, s.left, t.left)
        if left is None:
            return None
        right = _eval(st, s.right, t.right)
        if right is None:
            return None
        return Pair(left, right, _pair_tag(left, right))
    if isinstance(s, S.All):
        cs = children(t)
        if not cs:
            return t
        out = []
        for c in cs:
            r = _eval(st, s.arg, c)
            if r is None:
                return None
            out.append(r)
        return _rebuild(t, out)
    if isinstance(s, S.One):
        cs = children(t)
        for i, c in enumerate(cs):
            r = _eval(st, s.arg, c)
            if r is not None:
                out = list(cs)
                out[i] = r
                return _rebuild(t, out)
        return None
    if isinstance(s, S.Reduce):
        cs = children(t)
        if not cs:
            return None
        results = []
        for c in cs:
            r = _eval(st, s.child, c)
            if r is None:
                return None
            results.append(r)
        acc = results[0]
        for r in results[1:]:
            acc = _eval(st, s.splus, Pair(acc, r, _pair_tag(acc, r)))
            if acc is None:
                return None
        return acc
    if isinstance(s, S.Select):
        for c in children(t):
            r = _eval(st, s.arg, c)
            if r is not None:
                return r
        return None
    if isinstance(s, S.Spawn):
        left = _eval(st, s.left, t)
        if left is None:
            return None
        right = _eval(st, s.right, t)
        if right is None:
            return None
        return Pair(left, right, _pair_tag(left, right))
    if isinstance(s, S.Extend):
        child = s.arg
        if isinstance(child, S.Annot):
            inner_type = child.stype
        else:
            inner_type = st.runtime_type(child)
        tau = get_tag(st.ctx, t)
        if tau in domains(inner_type):
            return _eval(st, child, t)
        return None
    if isinstance(s, (S.Restrict, S.Annot)):
        return _eval(st, s.arg, t)
    if isinstance(s, S.AmpS):
        tau = get_tag(st.ctx, t)
        st.amp_dispatches += 1
        for branch in (s.left, s.right):
            if tau in domains(st.runtime_type(branch)):
                st.amp_branch_evals += 1
                return _eval(st, branch, t)
        raise InternalTypeViolation(
            "no overloaded branch accepts a term of type %r" % (tau,))
    if isinstance(s, S.TypeGuard):
        tau = get_tag(st.ctx, t)
        return t if tau == s.ttype else None
    if isinstance(s, S.TLChoice):
        pi1 = st.runtime_type(s.left)
        tau = get_tag(st.ctx, t)
        if tau in domains(pi1):
            return _eval(st, s.left, t)
        return _eval(st, s.right, t)
    if isinstance(s, S.TRChoice):
        return _eval_node(st, S.TLChoice(s.right, s.left, s.pos), t)
    if isinstance(s, S.ParamRef):
        raise InternalTypeViolation(
            "unsubstituted strategy parameter %s" % s.name)
    if isinstance(s, S.Call):
        d = st.defs.get(s.name)
        if d is None:
            raise UnboundCombinator("no definition for combinator %s" % s.name)
        if st.fuel is not None:
            if st.fuel <= 0:
                raise FuelExhausted("fuel exhausted expanding %s" % s.name)
            st.fuel -= 1
        tsub = dict(zip(d.type_params, s.type_args))
        ssub = dict(zip(d.params, s.args))
        body = substitute_strategy(d.body, ssub, tsub)
        return _eval(st, body, t)
    raise TypeError("not a strategy: %r" % (s,))


def _pair_tag(left, right):
    if left.tag is not None and right.tag is not None:
        return PairType(left.tag, right.tag)
    return None


def _rebuild(t, new_children):
    if isinstance(t, FunApp):
        return FunApp(t.name, tuple(new_children), t.tag)
    if isinstance(t, Pair):
        return Pair(new_children[0], new_children[1], t.tag)
    raise InternalTypeViolation("cannot rebuild %r" % (t,))


def _eval_body(st, body, theta):
    if isinstance(body, S.Result):
        return substitute(theta, body.term)
    u = substitute(theta, body.arg)
    r = _eval(st, body.strat, u)
    if r is None:
        return None
    theta = dict(theta)
    theta[body.var] = r
    return _eval_body(st, body.rest, theta)


# ---------------------------------------------------------------------------
# Substitution of combinator actuals into definition bodies


def _substitute_term_tags(t, tsub):
    def fix(tag):
        return None if tag is None else _subst_term_type(tsub, tag)

    if isinstance(t, FunApp):
        return FunApp(t.name, tuple(_substitute_term_tags(a, tsub) for a in t.args),
                      fix(t.tag))
    if isinstance(t, Pair):
        return Pair(_substitute_term_tags(t.left, tsub),
                    _substitute_term_tags(t.right, tsub), fix(t.tag))
    return t.with_tag(fix(t.tag))


def _subst_term_type(tsub, tt):
    return _substitute_type_vars(tsub, tt)


def substitute_strategy(s, ssub, tsub):
    """Replace strategy parameters and type variables in a definition body."""
    rec = lambda x: substitute_strategy(x, ssub, tsub)
    if isinstance(s, S.ParamRef):
        return ssub.get(s.name, s)
    if isinstance(s, S.Rule):
        if tsub:
            return S.Rule(_substitute_term_tags(s.lhs, tsub),
                          _subst_body(s.body, ssub, tsub), s.pos)
        return S.Rule(s.lhs, _subst_body(s.body, ssub, tsub), s.pos)
    if isinstance(s, (S.Id, S.Fail, S.Void, S.CongCon, S.CongUnit)):
        return s
    if isinstance(s, (S.Seq, S.Choice, S.LChoice, S.RChoice, S.CongPair,
                      S.Spawn, S.AmpS, S.TLChoice, S.TRChoice)):
        return type(s)(rec(s.left), rec(s.right), s.pos)
    if isinstance(s, (S.Neg, S.All, S.One, S.Select)):
        return type(s)(rec(s.arg), s.pos)
    if isinstance(s, S.Reduce):
        return S.Reduce(rec(s.splus), rec(s.child), s.pos)
    if isinstance(s, (S.Extend, S.Restrict, S.Annot)):
        return type(s)(rec(s.arg), substitute_stype(tsub, s.stype), s.pos)
    if isinstance(s, S.TypeGuard):
        return S.TypeGuard(_subst_term_type(tsub, s.ttype),
                           substitute_stype(tsub, s.stype), s.pos)
    if isinstance(s, S.CongFun):
        return S.CongFun(s.name, tuple(rec(a) for a in s.args), s.pos)
    if isinstance(s, S.Call):
        targs = tuple(_subst_term_type(tsub, ta) for ta in s.type_args)
        return S.Call(s.name, targs, tuple(rec(a) for a in s.args), s.pos)
    raise TypeError("not a strategy: %r" % (s,))


def _subst_body(b, ssub, tsub):
    if isinstance(b, S.Result):
        if tsub:
            return S.Result(_substitute_term_tags(b.term, tsub))
        return b
    arg = _substitute_term_tags(b.arg, tsub) if tsub else b.arg
    return S.Where(b.var, substitute_strategy(b.strat, ssub, tsub), arg,
                   _subst_body(b.rest, ssub, tsub))


# ---------------------------------------------------------------------------
# Public entry points


def apply_strategy(ctx, defs, s, t, cfg=None, state=None):
    """Apply s to the ground term t; returns Ok, Failure, or EngineFailure."""
    cfg = cfg or EvalConfig()
    if state is None:
        state = EvalState()
    state.ctx = ctx
    state.defs = defs
    state.cfg = cfg
    state.fuel = None if cfg.fuel == 0 else cfg.fuel
    assert is_ground(t), "strategy application needs a ground term"
    try:
        result = _eval(state, s, t)
    except (FuelExhausted, UnboundCombinator, InternalTypeViolation) as e:
        return EngineFailure(e.kind, e.detail)
    if result is None:
        return FAILURE
    try:
        return Ok(tag_term(ctx, result))
    except StaticError as e:
        return EngineFailure("InternalTypeViolation",
                             "reduct is ill-typed: %s" % e.message)


def eval_body(ctx, defs, b, theta, cfg=None, state=None):
    """Evaluate a rule body under a substitution (exposed for tests)."""
    cfg = cfg or EvalConfig()
    if state is None:
        state = EvalState()
    state.ctx = ctx
    state.defs = defs
    state.cfg = cfg
    state.fuel = None if cfg.fuel == 0 else cfg.fuel
    try:
        result = _eval_body(state, b, theta)
    except (FuelExhausted, UnboundCombinator, InternalTypeViolation) as e:
        return EngineFailure(e.kind, e.detail)
    if result is None:
        return FAILURE
    return Ok(tag_term(ctx, result))


def run_program(program, t, cfg=None, state=None):
    """Apply a checked, elaborated program's main strategy to t."""
    return apply_strategy(program.context, program.definitions, program.main,
                          t, cfg, state)
