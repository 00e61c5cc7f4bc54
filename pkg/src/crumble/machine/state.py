"""Pointed states ``e | e_v``: the unevaluated stack on the left of the cursor, the evaluated store on its right."""
from typing import Dict, List, Optional

from crumble.constants import Mode
from crumble.crumbling import Crumble, crumble_free_vars, is_practical_value, is_well_named, readback, readback_suffixes
from crumble.machine.nodes import (
    MBite,
    Node,
    UnevaluatedEnv,
    is_machine_practical_value,
    to_node_crumble,
    to_plain_bite,
    to_plain_entries,
)
from crumble.reference import is_fireball
from crumble.syntax import ERR, Term, VarId
from crumble.syntax import is_practical_value as is_practical_term


class MachineError(Exception):
    pass


class EmptyState(MachineError):
    def __init__(self):
        super().__init__("The state holds no entries.")


class WellNamedViolation(MachineError):
    pass


class EvaluatedEnv:
    """Store of evaluated entries. Each insertion becomes the new leftmost entry."""

    def __init__(self):
        self._store: Dict[VarId, Node] = {}

    def __contains__(self, var: VarId) -> bool:
        return var in self._store

    def __len__(self) -> int:
        return len(self._store)

    def insert(self, node: Node) -> None:
        self._store[node.binder] = node

    def lookup(self, var: VarId) -> Optional[MBite]:
        node = self._store.get(var)
        return None if node is None else node.content

    def nodes(self) -> List[Node]:
        return list(reversed(self._store.values()))


class PointedState:
    def __init__(self, unevaluated: Optional[UnevaluatedEnv] = None, evaluated: Optional[EvaluatedEnv] = None):
        self.unevaluated = UnevaluatedEnv() if unevaluated is None else unevaluated
        self.evaluated = EvaluatedEnv() if evaluated is None else evaluated
        self.transitions = 0

    @property
    def is_final(self) -> bool:
        return self.unevaluated.is_empty

    def nodes(self) -> List[Node]:
        """All entries, left to right."""
        return self.unevaluated.nodes() + self.evaluated.nodes()


def iota(crumble: Crumble) -> PointedState:
    """Start state ``[x <- b]e | ε`` for ``crumble = (b, e)``, with ``x`` fresh."""
    converted = to_node_crumble(crumble)
    state = PointedState()
    state.unevaluated.push(Node(VarId.fresh(), converted.bite))
    state.unevaluated.append(converted)
    return state


def readback_state(state: PointedState) -> Crumble:
    nodes = state.nodes()
    if not nodes:
        raise EmptyState()
    head, *rest = nodes
    return Crumble(to_plain_bite(head.content), to_plain_entries(rest))


def state_readback_term(state: PointedState) -> Term:
    return readback(readback_state(state))


def check_invariants(state: PointedState, mode: Mode) -> None:
    """Freshness, and for the closed machine closure and the practical-value store. O(state) per call."""
    entries = Crumble(ERR, to_plain_entries(state.nodes()))
    if not is_well_named(entries):
        raise WellNamedViolation(f"Entry binders are not distinct after {state.transitions} transitions.")
    if mode is Mode.CLOSED:
        free = crumble_free_vars(entries)
        if free:
            names = ", ".join(sorted(str(var) for var in free))
            raise MachineError(f"Closed state has free variables {names} after {state.transitions} transitions.")
        for node in state.evaluated.nodes():
            if not is_machine_practical_value(node.content):
                raise MachineError(f"Evaluated entry '{node.binder}' does not hold a practical value.")


def check_vcrumble_final(state: PointedState, mode: Mode) -> bool:
    """Whether a final state is in the normal form its machine promises.

    Closed: every evaluated entry is a practical value. Open: every suffix of the evaluated
    environment reads back to a fireball, and a suffix reading back to a practical value starts
    with a practical value bite.
    """
    if not state.is_final or not len(state.evaluated):
        return False
    if mode is Mode.CLOSED:
        return all(is_machine_practical_value(node.content) for node in state.evaluated.nodes())

    entries = to_plain_entries(state.evaluated.nodes())
    for (_, bite), term in zip(entries, readback_suffixes(entries)):
        if not is_fireball(term):
            return False
        if is_practical_term(term) and not is_practical_value(bite):
            return False
    return True
