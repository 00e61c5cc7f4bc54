"""Mutable node chains holding the machine's environments.

Entries bound by an environment are referenced through ``Shared(node)``, so looking a variable up
is following a pointer and substituting a value is copying that pointer. Variables bound by an
abstraction, and free ones, stay plain ``Var``.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from crumble.crumbling import BApp, BIf, Bite, CLam, Crumble, Entry
from crumble.syntax import Bool, Err, Var, VarId


class Node:
    """One entry ``[binder <- content]``; ``prev`` links to the entry on its left."""

    __slots__ = ("binder", "content", "prev", "copying")

    def __init__(self, binder: VarId, content: "MBite", prev: Optional["Node"] = None):
        self.binder = binder
        self.content = content
        self.prev = prev
        self.copying = False

    def __repr__(self) -> str:
        return f"Node({self.binder!s}#{self.binder.id})"


@dataclass(frozen=True)
class Shared:
    node: Node


@dataclass(frozen=True)
class MLam:
    var: VarId
    body: "NodeCrumble"


@dataclass(frozen=True)
class MApp:
    fun: "MValue"
    arg: "MValue"


@dataclass(frozen=True)
class MIf:
    cond: "MValue"
    then_branch: "NodeCrumble"
    else_branch: "NodeCrumble"


MValue = Union[Var, Shared, MLam, Bool, Err]
MBite = Union[Var, Shared, MLam, Bool, Err, MApp, MIf]


@dataclass(frozen=True)
class NodeCrumble:
    """A bite with the chain ``first .. last`` as its environment, ``length`` entries long."""

    bite: MBite
    first: Optional[Node] = None
    last: Optional[Node] = None
    length: int = 0

    def nodes(self) -> List[Node]:
        chain: List[Node] = []
        node = self.last
        while node is not None:
            chain.append(node)
            if node is self.first:
                break
            node = node.prev
        chain.reverse()
        return chain


def is_machine_practical_value(bite: MBite) -> bool:
    return isinstance(bite, (MLam, Bool, Err))


def _link(nodes: List[Node]) -> Tuple[Optional[Node], Optional[Node]]:
    for left, right in zip(nodes, nodes[1:]):
        right.prev = left
    if not nodes:
        return None, None
    return nodes[0], nodes[-1]


class UnevaluatedEnv:
    """Catenable stack of nodes. The top is the rightmost entry, the one evaluated next."""

    def __init__(self):
        self.first: Optional[Node] = None
        self.top: Optional[Node] = None
        self.length = 0

    @property
    def is_empty(self) -> bool:
        return self.top is None

    def push(self, node: Node) -> None:
        node.prev = self.top
        if self.first is None:
            self.first = node
        self.top = node
        self.length += 1

    def append(self, crumble: NodeCrumble) -> None:
        """Put the environment of ``crumble`` on the top, in constant time. The chain is taken over."""
        if crumble.first is None or crumble.last is None:
            return
        crumble.first.prev = self.top
        if self.first is None:
            self.first = crumble.first
        self.top = crumble.last
        self.length += crumble.length

    def pop(self) -> Node:
        node = self.top
        if node is None:
            raise IndexError("pop from an empty environment")
        self.top = node.prev
        node.prev = None
        if self.top is None:
            self.first = None
        self.length -= 1
        return node

    def nodes(self) -> List[Node]:
        return NodeCrumble(Err(), self.first, self.top, self.length).nodes()


class _Copier:
    """α-renaming copy of a node crumble.

    While a chain is copied, each source node temporarily holds ``Shared(copy)`` with ``copying``
    set, so references to it inside the copied bites are redirected in constant time.
    """

    def __init__(self, arg_node: Node):
        self._arg_node = arg_node

    def crumble(self, crumble: NodeCrumble, bound: Optional[VarId]) -> NodeCrumble:
        copies: List[Node] = []
        saved: List[Tuple[Node, MBite]] = []
        try:
            for node in reversed(crumble.nodes()):
                copy = Node(VarId.fresh(node.binder.name_hint), self.bite(node.content, bound))
                saved.append((node, node.content))
                node.content = Shared(copy)
                node.copying = True
                copies.append(copy)
            bite = self.bite(crumble.bite, bound)
        finally:
            for node, content in saved:
                node.content = content
                node.copying = False
        copies.reverse()
        first, last = _link(copies)
        return NodeCrumble(bite, first, last, len(copies))

    def bite(self, bite: MBite, bound: Optional[VarId]) -> MBite:
        if isinstance(bite, Var):
            return Shared(self._arg_node) if bite.var == bound else bite
        if isinstance(bite, Shared):
            return bite.node.content if bite.node.copying else bite
        if isinstance(bite, MApp):
            return MApp(self.bite(bite.fun, bound), self.bite(bite.arg, bound))  # type: ignore[arg-type]
        if isinstance(bite, MLam):
            return MLam(bite.var, self.crumble(bite.body, None if bite.var == bound else bound))
        if isinstance(bite, MIf):
            return MIf(
                self.bite(bite.cond, bound),  # type: ignore[arg-type]
                self.crumble(bite.then_branch, bound),
                self.crumble(bite.else_branch, bound),
            )
        return bite


def copy_crumble(body: NodeCrumble, bound: VarId, arg_node: Node) -> NodeCrumble:
    """Copy ``body`` with fresh entry nodes, pointing every free occurrence of ``bound`` to ``arg_node``.

    ``body`` is left exactly as it was. The cost is linear in the size of ``body``.
    """
    return _Copier(arg_node).crumble(body, bound)


def _node_bite(bite: Bite, scope: Dict[VarId, Node]) -> MBite:
    if isinstance(bite, Var):
        node = scope.get(bite.var)
        return bite if node is None else Shared(node)
    if isinstance(bite, CLam):
        shadowed = scope.pop(bite.var, None)
        try:
            return MLam(bite.var, to_node_crumble(bite.body, scope))
        finally:
            if shadowed is not None:
                scope[bite.var] = shadowed
    if isinstance(bite, BApp):
        return MApp(_node_bite(bite.fun, scope), _node_bite(bite.arg, scope))  # type: ignore[arg-type]
    if isinstance(bite, BIf):
        return MIf(
            _node_bite(bite.cond, scope),  # type: ignore[arg-type]
            to_node_crumble(bite.then_branch, scope),
            to_node_crumble(bite.else_branch, scope),
        )
    return bite


def to_node_crumble(crumble: Crumble, scope: Optional[Dict[VarId, Node]] = None) -> NodeCrumble:
    """Build fresh nodes for ``crumble``; variables bound in ``scope`` become ``Shared`` references."""
    scope = {} if scope is None else scope
    nodes: List[Node] = []
    shadowed: List[Tuple[VarId, Optional[Node]]] = []
    for var, bite in reversed(crumble.env):
        node = Node(var, _node_bite(bite, scope))
        nodes.append(node)
        shadowed.append((var, scope.get(var)))
        scope[var] = node
    bite = _node_bite(crumble.bite, scope)
    for var, previous in reversed(shadowed):
        if previous is None:
            del scope[var]
        else:
            scope[var] = previous
    nodes.reverse()
    first, last = _link(nodes)
    return NodeCrumble(bite, first, last, len(nodes))


def to_plain_bite(bite: MBite) -> Bite:
    if isinstance(bite, Shared):
        return Var(bite.node.binder)
    if isinstance(bite, MLam):
        return CLam(bite.var, to_plain_crumble(bite.body))
    if isinstance(bite, MApp):
        return BApp(to_plain_bite(bite.fun), to_plain_bite(bite.arg))  # type: ignore[arg-type]
    if isinstance(bite, MIf):
        return BIf(
            to_plain_bite(bite.cond),  # type: ignore[arg-type]
            to_plain_crumble(bite.then_branch),
            to_plain_crumble(bite.else_branch),
        )
    return bite


def to_plain_entries(nodes: List[Node]) -> Tuple[Entry, ...]:
    return tuple((node.binder, to_plain_bite(node.content)) for node in nodes)


def to_plain_crumble(crumble: NodeCrumble) -> Crumble:
    """Deep conversion; the result shares nothing mutable with ``crumble``."""
    return Crumble(to_plain_bite(crumble.bite), to_plain_entries(crumble.nodes()))
