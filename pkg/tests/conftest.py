import os

import pytest

import stratcalc as sc

HERE = os.path.dirname(__file__)
PROGRAMS = os.path.join(HERE, "..", "programs")


def program_path(name):
    return os.path.join(PROGRAMS, name)


def load_program(name):
    with open(program_path(name)) as f:
        return sc.parse_program(f.read(), prelude=sc.load_prelude())


NAT_TREE_HEADER = """
sort Nat;
sort Tree;
con zero : Nat;
fun succ : Nat -> Nat;
fun leaf : Nat -> Tree;
fun fork : Tree * Tree -> Tree;
var N : Nat;
var N1 : Nat;
var N2 : Nat;
var T1 : Tree;
var T2 : Tree;
main = id;
"""


@pytest.fixture(scope="session")
def nat_tree():
    """A program over the Nat/Tree signature (context + prelude defs)."""
    return sc.parse_program(NAT_TREE_HEADER, prelude=sc.load_prelude())


@pytest.fixture(scope="session")
def nat_tree_ctx(nat_tree):
    return nat_tree.context


@pytest.fixture(scope="session")
def problems():
    p = load_program("problems.strat")
    diags, _ = sc.check_program(p)
    assert not diags, [d.render() for d in diags]
    return p


@pytest.fixture(scope="session")
def problems_elaborated(problems):
    return sc.elaborate_program(problems)


@pytest.fixture(scope="session")
def overload():
    p = load_program("overload.strat")
    diags, _ = sc.check_program(p)
    assert not diags, [d.render() for d in diags]
    return p


@pytest.fixture(scope="session")
def addition():
    p = load_program("addition.strat")
    diags, _ = sc.check_program(p)
    assert not diags, [d.render() for d in diags]
    return p


def num(n):
    t = sc.Constant("zero")
    for _ in range(n):
        t = sc.FunApp("succ", (t,))
    return t


def run_call(program_elab, name, term, fuel=100000, trace=False, state=None):
    from stratcalc import syntax as S

    return sc.apply_strategy(program_elab.context, program_elab.definitions,
                             S.Call(name, (), ()), term,
                             sc.EvalConfig(fuel=fuel, trace=trace), state)
