"""Transitions of the pointed machine, closed and open.

Every transition acts on the top of the unevaluated stack. ``select_rule`` decides which rule
applies without touching the state, ``fire`` applies it. The two machines only differ in what
happens to free variables and in which stored bites may be substituted.
"""
import logging
import os
from collections import Counter
from typing import Callable, Dict, List, NamedTuple, Optional

from crumble.constants import DEBUG_ASSERT_ENV_VAR, DEFAULT_FUEL, Mode
from crumble.crumbling import crumble_size, print_crumble, readback
from crumble.machine.metrics import Metrics, Trace, TraceEntry, TransitionLabel
from crumble.machine.nodes import MApp, MBite, MIf, MLam, Node, Shared, copy_crumble, is_machine_practical_value
from crumble.machine.state import MachineError, PointedState, WellNamedViolation, check_invariants, readback_state
from crumble.syntax import ERR, Bool, Err, Var, VarId, term_size

_LOG = logging.getLogger(__name__)

StepCallback = Callable[[TransitionLabel, Optional[str]], None]


class OpenTermError(MachineError):
    def __init__(self, var: VarId, position: int):
        super().__init__(f"Free variable '{var}' met in closed mode after {position} transitions.")
        self.var = var
        self.position = position


class RunResult(NamedTuple):
    state: PointedState
    metrics: Metrics
    trace: Trace
    exhausted: bool


def debug_assertions_enabled() -> bool:
    return os.getenv(DEBUG_ASSERT_ENV_VAR, "") == "1"


def _stored(state: PointedState, shared: Shared) -> MBite:
    stored = state.evaluated.lookup(shared.node.binder)
    if stored is None:
        raise WellNamedViolation(f"'{shared.node.binder}' refers to an entry that is not evaluated yet.")
    return stored


def _substitutable(state: PointedState, shared: Shared, mode: Mode) -> bool:
    stored = _stored(state, shared)
    return mode is Mode.CLOSED or is_machine_practical_value(stored)


def _free_head(state: PointedState, var: Var, mode: Mode) -> TransitionLabel:
    if mode is Mode.CLOSED:
        raise OpenTermError(var.var, state.transitions)
    return TransitionLabel.SEA


def select_rule(state: PointedState, mode: Mode) -> Optional[TransitionLabel]:
    """Rule for the next transition, ``None`` on a final state.

    Raises ``OpenTermError`` when the closed machine meets a free variable in head position.
    """
    top = state.unevaluated.top
    if top is None:
        return None
    content = top.content

    if isinstance(content, MApp):
        fun = content.fun
        if isinstance(fun, MLam):
            return TransitionLabel.BETA
        if isinstance(fun, (Bool, Err)):
            return TransitionLabel.APP_ERR
        if isinstance(fun, Shared):
            return TransitionLabel.SUB_L if _substitutable(state, fun, mode) else TransitionLabel.SEA
        return _free_head(state, fun, mode)

    if isinstance(content, MIf):
        cond = content.cond
        if isinstance(cond, Bool):
            return TransitionLabel.IFT if cond.value else TransitionLabel.IFF
        if isinstance(cond, (MLam, Err)):
            return TransitionLabel.IFE
        if isinstance(cond, Shared):
            return TransitionLabel.SUB_IF if _substitutable(state, cond, mode) else TransitionLabel.SEA
        return _free_head(state, cond, mode)

    if isinstance(content, Shared):
        return TransitionLabel.SUB_VAR if _substitutable(state, content, mode) else TransitionLabel.SEA
    if isinstance(content, Var):
        return _free_head(state, content, mode)
    return TransitionLabel.SEA


def fire(state: PointedState, label: TransitionLabel) -> None:
    """Apply ``label``, which must be the rule ``select_rule`` chose for ``state``."""
    unevaluated = state.unevaluated
    top = unevaluated.top
    assert top is not None, "no transition fires on a final state"
    content = top.content

    if label is TransitionLabel.BETA:
        assert isinstance(content, MApp) and isinstance(content.fun, MLam)
        lam = content.fun
        arg_node = Node(VarId.fresh(lam.var.name_hint), content.arg)
        copy = copy_crumble(lam.body, lam.var, arg_node)
        top.content = copy.bite
        unevaluated.append(copy)
        unevaluated.push(arg_node)
    elif label in (TransitionLabel.IFT, TransitionLabel.IFF):
        assert isinstance(content, MIf)
        branch = content.then_branch if label is TransitionLabel.IFT else content.else_branch
        top.content = branch.bite
        unevaluated.append(branch)
    elif label in (TransitionLabel.IFE, TransitionLabel.APP_ERR):
        top.content = ERR
    elif label is TransitionLabel.SUB_L:
        assert isinstance(content, MApp) and isinstance(content.fun, Shared)
        top.content = MApp(_stored(state, content.fun), content.arg)  # type: ignore[arg-type]
    elif label is TransitionLabel.SUB_IF:
        assert isinstance(content, MIf) and isinstance(content.cond, Shared)
        top.content = MIf(_stored(state, content.cond), content.then_branch, content.else_branch)  # type: ignore
    elif label is TransitionLabel.SUB_VAR:
        assert isinstance(content, Shared)
        top.content = _stored(state, content)
    else:
        state.evaluated.insert(unevaluated.pop())
    state.transitions += 1


def step(state: PointedState, mode: Mode) -> Optional[TransitionLabel]:
    """Fire the one applicable transition in place; ``None`` when ``state`` is final."""
    label = select_rule(state, mode)
    if label is not None:
        fire(state, label)
    return label


def _initial_sizes(state: PointedState) -> Dict[str, int]:
    if not state.nodes():
        return {}
    crumble = readback_state(state)
    return {"initial_term_size": term_size(readback(crumble)), "initial_crumble_size": crumble_size(crumble)}


class _Recorder:
    def __init__(self, state: PointedState, snapshots: bool, on_step: Optional[StepCallback], debug: bool, mode: Mode):
        self.counts: Counter = Counter()
        self.entries: List[TraceEntry] = []
        self._state = state
        self._snapshots = snapshots
        self._on_step = on_step
        self._debug = debug
        self._mode = mode
        self._log_steps = _LOG.isEnabledFor(logging.DEBUG)

    def record(self, label: TransitionLabel) -> None:
        self.counts[label] += 1
        snapshot = print_crumble(readback_state(self._state)) if self._snapshots else None
        self.entries.append(TraceEntry(len(self.entries), label, snapshot))
        if self._log_steps:
            _LOG.debug(f"Transition {len(self.entries) - 1}: {label.value}")
        if self._debug:
            check_invariants(self._state, self._mode)
        if self._on_step is not None:
            self._on_step(label, snapshot)


def run(
    state: PointedState,
    mode: Mode,
    fuel: int = DEFAULT_FUEL,
    *,
    principal_fuel: Optional[int] = None,
    snapshots: bool = False,
    on_step: Optional[StepCallback] = None,
    merge_sub_var: bool = False,
    debug: Optional[bool] = None,
) -> RunResult:
    """Run until the state is final or a budget runs out.

    ``fuel`` bounds the number of transitions. ``principal_fuel`` stops the run before a principal
    transition beyond that many. With ``merge_sub_var`` the pop following a variable substitution
    is fired in the same iteration; both labels are still recorded and both count against ``fuel``.
    The initial sizes in the metrics are those of the read-back of ``state`` before the run.
    """
    if fuel < 0:
        raise ValueError(f"Fuel must not be negative, got {fuel}.")
    if debug is None:
        debug = debug_assertions_enabled()
    initial_sizes = _initial_sizes(state)
    recorder = _Recorder(state, snapshots, on_step, debug, mode)
    iterations = principal = 0
    exhausted = False

    while True:
        label = select_rule(state, mode)
        if label is None:
            break
        if iterations >= fuel or (label.is_principal and principal_fuel is not None and principal >= principal_fuel):
            exhausted = True
            break
        fire(state, label)
        recorder.record(label)
        iterations += 1
        principal += label.is_principal
        if merge_sub_var and label is TransitionLabel.SUB_VAR and iterations < fuel:
            fire(state, TransitionLabel.SEA)
            recorder.record(TransitionLabel.SEA)
            iterations += 1

    if exhausted:
        _LOG.debug(f"Fuel exhausted after {iterations} transitions, {principal} of them principal.")
    metrics = Metrics(counts=recorder.counts, **initial_sizes)
    return RunResult(state, metrics, Trace(tuple(recorder.entries)), exhausted)
