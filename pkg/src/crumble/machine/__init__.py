from crumble.machine.engine import OpenTermError, RunResult, debug_assertions_enabled, fire, run, select_rule, step
from crumble.machine.metrics import Metrics, Trace, TraceEntry, TransitionLabel
from crumble.machine.nodes import (
    MApp,
    MBite,
    MIf,
    MLam,
    Node,
    NodeCrumble,
    Shared,
    UnevaluatedEnv,
    copy_crumble,
    to_node_crumble,
    to_plain_crumble,
)
from crumble.machine.state import (
    EmptyState,
    EvaluatedEnv,
    MachineError,
    PointedState,
    WellNamedViolation,
    check_invariants,
    check_vcrumble_final,
    iota,
    readback_state,
    state_readback_term,
)
