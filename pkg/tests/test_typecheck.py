"""Typing judgements: well-formedness, genericity, composition, glb,
strategy/program typing, and a corpus of ill-typed programs that must be
rejected with a specific rule-tag."""

import pytest

import stratcalc as sc
from stratcalc import errors as E
from stratcalc import syntax as S
from stratcalc.terms import (
    Amp,
    Arrow,
    Constant,
    FunApp,
    PairType,
    Sort,
    TP_TYPE,
    TU,
    TypeVar,
    UNIT,
    Var,
)
from stratcalc.typecheck import apply_type

from conftest import NAT_TREE_HEADER
from randgen import NAT, TREE

BOOL = Sort("Boolean")
NN = Arrow(NAT, NAT)
TT = Arrow(TREE, TREE)


def nat_main(body):
    return NAT_TREE_HEADER.replace("main = id;", "main = %s;" % body)


# -- well-formedness --------------------------------------------------------

def test_wf_declared_sort(nat_tree_ctx):
    sc.wf_term_type(nat_tree_ctx, NAT)
    sc.wf_term_type(nat_tree_ctx, UNIT)
    sc.wf_term_type(nat_tree_ctx, PairType(NAT, TREE))


def test_wf_undeclared_sort_rejected(nat_tree_ctx):
    with pytest.raises(E.UndeclaredSort):
        sc.wf_term_type(nat_tree_ctx, Sort("Foo"))


def test_wf_unbound_type_var_rejected(nat_tree_ctx):
    with pytest.raises(E.UnboundTypeVar):
        sc.wf_term_type(nat_tree_ctx, TypeVar("a"))


def test_wf_strategy_types(nat_tree_ctx):
    sc.wf_strategy_type(nat_tree_ctx, TP_TYPE)
    sc.wf_strategy_type(nat_tree_ctx, TU(NAT))
    sc.wf_strategy_type(nat_tree_ctx, Amp(NN, TT))


def test_wf_overlapping_amp_rejected(nat_tree_ctx):
    with pytest.raises(E.OverlappingAmpDomains):
        sc.wf_strategy_type(nat_tree_ctx, Amp(NN, Arrow(NAT, TREE)))


def test_wf_generic_amp_branch_rejected(nat_tree_ctx):
    with pytest.raises(E.StaticError) as exc:
        sc.wf_strategy_type(nat_tree_ctx, Amp(NN, TP_TYPE))
    assert exc.value.rule == "pi.4"


def test_overload_type_of_three_branches(overload):
    # The Inc/Dec signature types as a three-branch overloaded sum.
    pi = sc.type_of_strategy(overload.context, overload.definitions["Inc"].body)
    n1, n0, i = Sort("NatOne"), Sort("NatZero"), Sort("Int")
    assert sc.terms.types_equal(
        pi, Amp(Arrow(n1, n1), Amp(Arrow(n0, n0), Arrow(i, i))))


# -- domains ----------------------------------------------------------------

def test_domains_arrow():
    assert sc.domains(Arrow(NAT, TREE)) == frozenset([NAT])


def test_domains_amp_union():
    assert sc.domains(Amp(NN, TT)) == frozenset([NAT, TREE])


def test_domains_generic_undefined():
    with pytest.raises(E.GenericDomainUndefined):
        sc.domains(TP_TYPE)


# -- genericity -------------------------------------------------------------

def test_less_preserving_arrow_below_tp(nat_tree_ctx):
    assert sc.generically_less(nat_tree_ctx, NN, TP_TYPE)
    assert not sc.generically_less(nat_tree_ctx, Arrow(NAT, TREE), TP_TYPE)


def test_less_arrow_below_tu_by_codomain(nat_tree_ctx):
    assert sc.generically_less(nat_tree_ctx, Arrow(TREE, NAT), TU(NAT))
    assert not sc.generically_less(nat_tree_ctx, NN, TU(BOOL))


def test_less_branch_subset(nat_tree_ctx):
    assert sc.generically_less(nat_tree_ctx, NN, Amp(NN, TT))
    assert not sc.generically_less(nat_tree_ctx, Amp(NN, TT), NN)


def test_less_amp_below_generic(nat_tree_ctx):
    assert sc.generically_less(nat_tree_ctx, Amp(NN, TT), TP_TYPE)
    assert not sc.generically_less(
        nat_tree_ctx, Amp(NN, Arrow(TREE, NAT)), TP_TYPE)


def test_less_is_irreflexive(nat_tree_ctx):
    for pi in [NN, TT, TP_TYPE, TU(NAT), Amp(NN, TT)]:
        assert not sc.generically_less(nat_tree_ctx, pi, pi)


# -- negation and composition of types -------------------------------------

def test_negatable_arrow_and_generics(nat_tree_ctx):
    assert sc.negatable(nat_tree_ctx, Arrow(NAT, TREE)) == NN
    assert sc.negatable(nat_tree_ctx, TU(NAT)) == TP_TYPE
    assert sc.negatable(nat_tree_ctx, TP_TYPE) == TP_TYPE


def test_negatable_amp_rejected(nat_tree_ctx):
    with pytest.raises(E.NotNegatable):
        sc.negatable(nat_tree_ctx, Amp(NN, TT))


def test_composable_arrows(nat_tree_ctx):
    got = sc.composable(nat_tree_ctx, Arrow(NAT, TREE), Arrow(TREE, NAT))
    assert got == NN


def test_composable_tp_left(nat_tree_ctx):
    assert sc.composable(nat_tree_ctx, TP_TYPE, TU(NAT)) == TU(NAT)
    assert sc.composable(nat_tree_ctx, TP_TYPE, NN) == NN
    assert sc.composable(nat_tree_ctx, TP_TYPE, TP_TYPE) == TP_TYPE


def test_composable_tu_then_arrow(nat_tree_ctx):
    assert sc.composable(nat_tree_ctx, TU(NAT), Arrow(NAT, BOOL)) == TU(BOOL)


def test_composable_arrow_then_tp(nat_tree_ctx):
    assert sc.composable(nat_tree_ctx, Arrow(NAT, TREE), TP_TYPE) \
        == Arrow(NAT, TREE)


def test_composable_arrow_then_tu(nat_tree_ctx):
    assert sc.composable(nat_tree_ctx, Arrow(NAT, TREE), TU(NAT)) == \
        Arrow(NAT, NAT)


def test_composable_amp_pairwise(nat_tree_ctx):
    got = sc.composable(nat_tree_ctx, Amp(NN, TT), Amp(NN, TT))
    assert sc.terms.types_equal(got, Amp(NN, TT))


def test_composable_rejections(nat_tree_ctx):
    with pytest.raises(E.NotComposable):
        sc.composable(nat_tree_ctx, Arrow(NAT, TREE), NN)
    with pytest.raises(E.NotComposable):
        sc.composable(nat_tree_ctx, TU(NAT), TU(TREE))
    with pytest.raises(E.NotComposable):
        sc.composable(nat_tree_ctx, TU(NAT), TP_TYPE)


# -- greatest lower bounds --------------------------------------------------

def test_glb_examples(nat_tree_ctx):
    assert sc.glb(nat_tree_ctx, TP_TYPE, TP_TYPE) == TP_TYPE
    assert sc.glb(nat_tree_ctx, NN, TP_TYPE) == NN
    with pytest.raises(E.NoLowerBound):
        sc.glb(nat_tree_ctx, NN, TT)


def test_glb_symmetric_and_bounded(nat_tree_ctx):
    cases = [(NN, TP_TYPE), (Amp(NN, TT), TP_TYPE), (TU(NAT), TU(NAT)),
             (Amp(NN, TT), Amp(NN, Arrow(TREE, NAT)))]
    for p1, p2 in cases:
        g12 = sc.glb(nat_tree_ctx, p1, p2)
        g21 = sc.glb(nat_tree_ctx, p2, p1)
        assert sc.terms.types_equal(g12, g21)
        assert sc.generically_leq(nat_tree_ctx, g12, p1)
        assert sc.generically_leq(nat_tree_ctx, g12, p2)


def test_glb_amp_vs_generic_filters_branches(nat_tree_ctx):
    got = sc.glb(nat_tree_ctx, Amp(NN, TT), TU(NAT))
    assert got == Arrow(NAT, NAT)


# -- strategy typing --------------------------------------------------------

def test_add_types_to_pair_arrow(problems):
    pi = sc.type_of_strategy(problems.context, problems.definitions["Add"].body)
    assert pi == Arrow(PairType(NAT, NAT), NAT)


def test_extend_instance_accepted(nat_tree):
    inc = S.Rule(Var("N"), S.Result(FunApp("succ", (Var("N"),))))
    assert sc.type_of_strategy(nat_tree.context,
                               S.Extend(inc, TP_TYPE)) == TP_TYPE


def test_extend_non_instance_rejected(nat_tree):
    inc = S.Rule(Var("N"), S.Result(FunApp("succ", (Var("N"),))))
    with pytest.raises(E.ExtendNotInstance):
        sc.type_of_strategy(nat_tree.context, S.Extend(inc, TU(TREE)))


def test_problem_types(problems):
    ctx = problems.context
    want = {"ProblemI": TP_TYPE, "ProblemII": TP_TYPE,
            "ProblemIII": TU(BOOL), "ProblemIV": TU(Sort("NatList")),
            "ProblemV": TU(NAT)}
    for name, pi in want.items():
        assert sc.type_of_strategy(ctx, problems.definitions[name].body) == pi


# -- application typing -----------------------------------------------------

def test_apply_id_to_constant(nat_tree_ctx):
    assert sc.type_of_application(nat_tree_ctx, S.Id(),
                                  Constant("zero")) == NAT


def test_apply_arrow_to_wrong_sort_rejected(nat_tree_ctx):
    inc = S.Rule(Var("N"), S.Result(FunApp("succ", (Var("N"),))))
    with pytest.raises(E.InapplicableType):
        sc.type_of_application(nat_tree_ctx, inc,
                               FunApp("leaf", (Constant("zero"),)))


def test_apply_overloaded_branch(overload):
    ctx = overload.context
    t = FunApp("positive", (Constant("zero"),))
    pi = sc.type_of_strategy(ctx, S.Call("Inc", (), ()))
    assert apply_type(ctx, pi, sc.type_of_term(ctx, t)) == Sort("Int")


def test_apply_tu_returns_result_type(problems):
    ctx = problems.context
    pi = sc.type_of_strategy(ctx, problems.definitions["ProblemV"].body)
    assert apply_type(ctx, pi, Sort("A")) == NAT


# -- program checking -------------------------------------------------------

def test_prelude_alone_checks_with_main_id():
    p = sc.parse_program("main = id;", prelude=sc.load_prelude())
    diags, main_type = sc.check_program(p)
    assert diags == [] and main_type == TP_TYPE


def test_body_with_undeclared_param_rejected():
    with pytest.raises(E.StaticError):
        sc.parse_program("def A : TP = v; main = A;")


def test_problems_check_to_declared_types(problems):
    diags, main_type = sc.check_program(problems)
    assert diags == [] and main_type == TP_TYPE


# -- negative suite: ill-typed programs with expected rule-tags -------------

ILL_TYPED = [
    # choice branches with no common lower bound
    (nat_main("(N -> succ(N)) + (T1 -> T1)"), "choice"),
    # extend target is not a generic supertype of the argument
    (nat_main("extend(N -> succ(N), TU(Tree))"), "extend"),
    # overloaded branches with overlapping domains
    (nat_main("(N -> succ(N)) & (N -> zero)"), "pi.4"),
    # rule pattern applies a symbol to the wrong sort
    (nat_main("succ(T1) -> T1"), "fun"),
    # restriction to a type that is not an instance of the argument's
    (nat_main("restrict(void, Nat -> Nat)"), "restrict"),
    # sequential composition with a codomain/domain clash
    (nat_main("(N -> leaf(N)) ; (N -> succ(N))"), "comp.1"),
    # negation of an overloaded strategy
    (nat_main("!((N -> succ(N)) & (T1 -> T1))"), "negt"),
    # all() applied to a non-type-preserving argument
    (nat_main("all(N -> succ(N))"), "all"),
    # undeclared sort mentioned in a guard type
    (nat_main("guard(Foo, TP)"), "tau.1"),
    # annotation that disagrees with the actual type
    (nat_main("(id : Nat -> Nat)"), "annot"),
    # definition body disagrees with the declared result type
    (nat_main("A").replace(
        "main =", "def A : Nat -> Nat = T1 -> T1;\nmain ="), "def.3"),
    # combinator argument with the wrong declared type
    (nat_main("A(T1 -> T1)").replace(
        "main =",
        "def A(v) : (Nat -> Nat) -> TP = extend(v, TP);\nmain ="), "comb"),
    # spawn over a non-type-unifying operand
    (nat_main("spawn(id, void)"), "spawn"),
    # reduce composer that cannot fold pairs of results
    (nat_main("reduce(N -> succ(N), extend(N -> succ(N), TU(Nat)))"), "red"),
]


def reject(src):
    """Parse/check one ill-typed program; return the rule-tags it is
    rejected with (empty means a false accept)."""
    try:
        program = sc.parse_program(src, prelude=sc.load_prelude())
    except E.StaticError as e:
        return [e.rule]
    diags, _ = sc.check_program(program)
    return [d.rule for d in diags]


@pytest.mark.parametrize("src,tag", ILL_TYPED,
                         ids=[t for _, t in ILL_TYPED])
def test_ill_typed_program_rejected_with_tag(src, tag):
    tags = reject(src)
    assert tags, "ill-typed program was accepted"
    assert tag in tags, "expected rule-tag %s, got %s" % (tag, tags)
