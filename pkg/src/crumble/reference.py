"""Small-step interpreters used as oracles.

Both strategies are right-to-left: an application evaluates its argument first, then its
function, then fires. ``pif_step`` is the closed calculus with values as normal forms,
``fireball_step`` the open one whose normal forms are fireballs.
"""
from enum import Enum
from logging import getLogger
from typing import Callable, List, NamedTuple, Union

from crumble.syntax import App, Bool, Err, ERR, If, Lam, Term, Var, is_value, print_term, subst

_LOG = getLogger(__name__)


class RuleName(Enum):
    BETA_V = "beta_v"
    BETA_I = "beta_i"
    IFT = "ift"
    IFF = "iff"
    IFE = "ife"
    APP_ERR = "app_err"


class Stepped(NamedTuple):
    term: Term
    rule: RuleName


class Normal(NamedTuple):
    pass


class Stuck(NamedTuple):
    reason: str


StepResult = Union[Stepped, Normal, Stuck]

NORMAL = Normal()


class StuckError(Exception):
    def __init__(self, term: Term, reason: str):
        super().__init__(f"Evaluation is stuck on '{print_term(term)}': {reason}")
        self.term = term
        self.reason = reason


class EvalResult(NamedTuple):
    term: Term
    steps: List[RuleName]
    exhausted: bool


def _fire_if(term: If) -> Stepped:
    guard = term.cond
    if isinstance(guard, Bool):
        return Stepped(term.then_branch, RuleName.IFT) if guard.value else Stepped(term.else_branch, RuleName.IFF)
    return Stepped(ERR, RuleName.IFE)


def pif_step(term: Term) -> StepResult:
    if isinstance(term, App):
        if not is_value(term.arg):
            result = pif_step(term.arg)
            return Stepped(App(term.fun, result.term), result.rule) if isinstance(result, Stepped) else result
        fun = term.fun
        if isinstance(fun, Lam):
            return Stepped(subst(fun.body, fun.var, term.arg), RuleName.BETA_V)
        if isinstance(fun, (Bool, Err)):
            return Stepped(ERR, RuleName.APP_ERR)
        if isinstance(fun, Var):
            return Stuck(f"free variable '{fun.var}' applied to a value")
        result = pif_step(fun)
        return Stepped(App(result.term, term.arg), result.rule) if isinstance(result, Stepped) else result

    if isinstance(term, If):
        guard = term.cond
        if not is_value(guard):
            result = pif_step(guard)
            if isinstance(result, Stepped):
                return Stepped(If(result.term, term.then_branch, term.else_branch), result.rule)
            return result
        if isinstance(guard, Var):
            return Stuck(f"free variable '{guard.var}' as a condition")
        return _fire_if(term)

    return NORMAL


def fireball_step(term: Term) -> StepResult:
    """One step of the open calculus. ``Normal`` is returned exactly on fireballs."""
    if isinstance(term, App):
        result = fireball_step(term.arg)
        if isinstance(result, Stepped):
            return Stepped(App(term.fun, result.term), result.rule)
        fun = term.fun
        if isinstance(fun, Lam):
            rule = RuleName.BETA_V if is_value(term.arg) else RuleName.BETA_I
            return Stepped(subst(fun.body, fun.var, term.arg), rule)
        if isinstance(fun, (Bool, Err)):
            return Stepped(ERR, RuleName.APP_ERR)
        if isinstance(fun, Var):
            return NORMAL
        result = fireball_step(fun)
        if isinstance(result, Stepped):
            return Stepped(App(result.term, term.arg), result.rule)
        return NORMAL

    if isinstance(term, If):
        result = fireball_step(term.cond)
        if isinstance(result, Stepped):
            return Stepped(If(result.term, term.then_branch, term.else_branch), result.rule)
        if isinstance(term.cond, (Bool, Lam, Err)):
            return _fire_if(term)
        return NORMAL

    return NORMAL


def is_inert(term: Term) -> bool:
    if isinstance(term, App):
        return (isinstance(term.fun, Var) or is_inert(term.fun)) and is_fireball(term.arg)
    if isinstance(term, If):
        return isinstance(term.cond, Var) or is_inert(term.cond)
    return False


def is_fireball(term: Term) -> bool:
    return is_value(term) or is_inert(term)


def _evaluate(step: Callable[[Term], StepResult], term: Term, fuel: int) -> EvalResult:
    if fuel < 0:
        raise ValueError(f"Fuel must not be negative, got {fuel}.")
    steps: List[RuleName] = []
    while True:
        result = step(term)
        if isinstance(result, Stuck):
            raise StuckError(term, result.reason)
        if isinstance(result, Normal):
            return EvalResult(term, steps, False)
        if len(steps) == fuel:
            _LOG.debug(f"Fuel of {fuel} steps exhausted.")
            return EvalResult(term, steps, True)
        term = result.term
        steps.append(result.rule)


def pif_eval(term: Term, fuel: int) -> EvalResult:
    return _evaluate(pif_step, term, fuel)


def fireball_eval(term: Term, fuel: int) -> EvalResult:
    return _evaluate(fireball_step, term, fuel)
