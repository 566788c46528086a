"""Abstract syntax of strategic programs.

Node equality is structural; source positions are excluded so that
pipeline stages (desugar, elaborate) can be compared for idempotence.
"""

from dataclasses import dataclass, field


class StrategyExpr:
    pos = None


def _posfield():
    return field(default=None, compare=False)


@dataclass(frozen=True)
class Rule(StrategyExpr):
    lhs: object  # Term
    body: object  # RuleBody
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Id(StrategyExpr):
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Fail(StrategyExpr):
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Seq(StrategyExpr):
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Choice(StrategyExpr):
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class LChoice(StrategyExpr):  # sugar: s1 <+ s2
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class RChoice(StrategyExpr):  # sugar: s1 +> s2
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Neg(StrategyExpr):
    arg: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class CongCon(StrategyExpr):
    name: str
    pos: tuple = _posfield()


@dataclass(frozen=True)
class CongFun(StrategyExpr):
    name: str
    args: tuple  # of StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class CongUnit(StrategyExpr):
    pos: tuple = _posfield()


@dataclass(frozen=True)
class CongPair(StrategyExpr):
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class All(StrategyExpr):
    arg: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class One(StrategyExpr):
    arg: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Reduce(StrategyExpr):
    splus: StrategyExpr
    child: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Select(StrategyExpr):
    arg: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Void(StrategyExpr):
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Spawn(StrategyExpr):
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Extend(StrategyExpr):
    arg: StrategyExpr
    stype: object  # StrategyType
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Restrict(StrategyExpr):
    arg: StrategyExpr
    stype: object
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Annot(StrategyExpr):
    arg: StrategyExpr
    stype: object
    pos: tuple = _posfield()


@dataclass(frozen=True)
class AmpS(StrategyExpr):  # overloaded strategy s1 & s2
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class TypeGuard(StrategyExpr):  # sugar: guard(tau, gamma)
    ttype: object  # TermType
    stype: object  # StrategyType
    pos: tuple = _posfield()


@dataclass(frozen=True)
class TLChoice(StrategyExpr):  # sugar: s1 <& s2
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class TRChoice(StrategyExpr):  # sugar: s1 &> s2
    left: StrategyExpr
    right: StrategyExpr
    pos: tuple = _posfield()


@dataclass(frozen=True)
class ParamRef(StrategyExpr):
    name: str
    pos: tuple = _posfield()


@dataclass(frozen=True)
class Call(StrategyExpr):
    name: str
    type_args: tuple  # of TermType/StrategyType? type arguments are term types
    args: tuple  # of StrategyExpr
    pos: tuple = _posfield()


# Rule bodies ---------------------------------------------------------------


class RuleBody:
    pass


@dataclass(frozen=True)
class Result(RuleBody):
    term: object  # Term


@dataclass(frozen=True)
class Where(RuleBody):
    var: str
    strat: StrategyExpr
    arg: object  # Term
    rest: RuleBody


# Programs ------------------------------------------------------------------


@dataclass(frozen=True)
class Definition:
    name: str
    type_params: tuple  # of str
    params: tuple  # of str
    ctype: object  # CombinatorType
    body: StrategyExpr
    pos: tuple = _posfield()


@dataclass
class Program:
    context: object  # Context
    definitions: dict  # name -> Definition
    main: StrategyExpr
