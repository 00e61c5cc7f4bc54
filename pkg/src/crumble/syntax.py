"""Surface terms: call-by-value λ-calculus with booleans, conditionals and an error constant."""
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import count
from typing import Dict, FrozenSet, Iterable, Optional, Set, Tuple, Union

import lark
from lark.exceptions import UnexpectedCharacters, UnexpectedInput, UnexpectedToken

KEYWORDS = frozenset({"if", "then", "else", "true", "false", "err"})


class _FreshCounter:
    """Process-wide source of variable ids. Allocation is serialized by a lock."""

    def __init__(self):
        self._next = 0
        self._lock = threading.Lock()

    def allocate(self) -> int:
        with self._lock:
            value = self._next
            self._next += 1
            return value


_COUNTER = _FreshCounter()


@dataclass(frozen=True)
class VarId:
    id: int
    name_hint: Optional[str] = field(default=None, compare=False)

    @classmethod
    def fresh(cls, name_hint: Optional[str] = None) -> "VarId":
        return cls(_COUNTER.allocate(), name_hint)

    def __str__(self) -> str:
        return self.name_hint or f"_{self.id}"


@dataclass(frozen=True)
class Var:
    var: VarId


@dataclass(frozen=True)
class Lam:
    var: VarId
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Term"


@dataclass(frozen=True)
class If:
    cond: "Term"
    then_branch: "Term"
    else_branch: "Term"


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Err:
    pass


TRUE = Bool(True)
FALSE = Bool(False)
ERR = Err()

Term = Union[Var, Lam, App, If, Bool, Err]


def is_value(term: Term) -> bool:
    return isinstance(term, (Var, Lam, Bool, Err))


def is_practical_value(term: Term) -> bool:
    return isinstance(term, (Lam, Bool, Err))


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


_GRAMMAR = r"""
?start: term

?term: lam
     | cond
     | app

lam: ("\\" | "λ") NAME "." term
cond: "if" term "then" term "else" term

?app: atom
    | app atom -> application

?atom: NAME -> var
     | "true" -> true
     | "false" -> false
     | "err" -> err
     | "(" term ")"

NAME: /(?!(?:if|then|else|true|false|err)(?![A-Za-z0-9_']))[A-Za-z_][A-Za-z0-9_']*/
COMMENT: /--[^\n]*/

%import common.WS
%ignore WS
%ignore COMMENT
"""


@lru_cache(maxsize=None)
def _parser() -> lark.Lark:
    return lark.Lark(_GRAMMAR, parser="lalr", lexer="contextual", propagate_positions=True)


class _TermBuilder:
    """Turns the lark tree into a ``Term``, allocating one ``VarId`` per binder."""

    def __init__(self, free: Dict[str, VarId]):
        self._free = free
        self._scope: Dict[str, VarId] = {}

    def build(self, node: Union[lark.Tree, lark.Token]) -> Term:
        rule = node.data
        if rule == "var":
            name = str(node.children[0])
            if name in self._scope:
                return Var(self._scope[name])
            if name not in self._free:
                self._free[name] = VarId.fresh(name)
            return Var(self._free[name])
        if rule == "true":
            return TRUE
        if rule == "false":
            return FALSE
        if rule == "err":
            return ERR
        if rule == "application":
            return App(self.build(node.children[0]), self.build(node.children[1]))
        if rule == "cond":
            return If(*(self.build(child) for child in node.children))
        if rule == "lam":
            name_token, body = node.children
            name = str(name_token)
            var = VarId.fresh(name)
            shadowed = self._scope.get(name)
            self._scope[name] = var
            try:
                return Lam(var, self.build(body))
            finally:
                if shadowed is None:
                    del self._scope[name]
                else:
                    self._scope[name] = shadowed
        raise ValueError(f"Unknown syntax node '{rule}'.")


def _end_position(source: str) -> Tuple[int, int]:
    lines = source.split("\n")
    return len(lines), len(lines[-1]) + 1


def _parse_error(exc: UnexpectedInput, source: str) -> ParseError:
    line, column = getattr(exc, "line", -1), getattr(exc, "column", -1)
    if isinstance(exc, UnexpectedToken) and exc.token.type != "$END":
        message = f"Unexpected token '{exc.token}'"
    elif isinstance(exc, UnexpectedCharacters):
        message = f"Unexpected character '{exc.char}'"
    else:
        message = "Unexpected end of input"
        line, column = _end_position(source)
    if not isinstance(line, int) or line < 1:
        line, column = _end_position(source)
    return ParseError(message, line, column)


def parse(source: str, free: Optional[Dict[str, VarId]] = None) -> Term:
    """Parse ``source`` into a term.

    Free variables with the same name become the same ``VarId``. Pass ``free`` to share
    that table between several calls; it is updated with newly seen names.
    """
    try:
        tree = _parser().parse(source)
    except UnexpectedInput as exc:
        raise _parse_error(exc, source) from exc
    return _TermBuilder({} if free is None else free).build(tree)


def free_vars(term: Term) -> FrozenSet[VarId]:
    if isinstance(term, Var):
        return frozenset((term.var,))
    if isinstance(term, Lam):
        return free_vars(term.body) - {term.var}
    if isinstance(term, App):
        return free_vars(term.fun) | free_vars(term.arg)
    if isinstance(term, If):
        return free_vars(term.cond) | free_vars(term.then_branch) | free_vars(term.else_branch)
    return frozenset()


class _Substitution:
    def __init__(self, var: VarId, replacement: Term):
        self.var = var
        self.replacement = replacement
        self._replacement_free: Optional[FrozenSet[VarId]] = None

    @property
    def replacement_free(self) -> FrozenSet[VarId]:
        if self._replacement_free is None:
            self._replacement_free = free_vars(self.replacement)
        return self._replacement_free

    def apply(self, term: Term) -> Term:
        if isinstance(term, Var):
            return self.replacement if term.var == self.var else term
        if isinstance(term, Lam):
            if term.var == self.var:
                return term
            if term.var in self.replacement_free and self.var in free_vars(term.body):
                renamed = VarId.fresh(term.var.name_hint)
                return Lam(renamed, self.apply(subst(term.body, term.var, Var(renamed))))
            body = self.apply(term.body)
            return term if body is term.body else Lam(term.var, body)
        if isinstance(term, App):
            fun, arg = self.apply(term.fun), self.apply(term.arg)
            return term if fun is term.fun and arg is term.arg else App(fun, arg)
        if isinstance(term, If):
            parts = (term.cond, term.then_branch, term.else_branch)
            replaced = tuple(self.apply(part) for part in parts)
            return term if all(new is old for new, old in zip(replaced, parts)) else If(*replaced)
        return term


def subst(term: Term, var: VarId, replacement: Term) -> Term:
    """Capture-avoiding ``term{var <- replacement}``.

    The calculi only substitute values, read-back also substitutes bites, so any term is accepted.
    Returns ``term`` itself when ``var`` does not occur free in it.
    """
    return _Substitution(var, replacement).apply(term)


def term_size(term: Term) -> int:
    if isinstance(term, Lam):
        return term_size(term.body) + 1
    if isinstance(term, App):
        return term_size(term.fun) + term_size(term.arg) + 1
    if isinstance(term, If):
        return term_size(term.cond) + term_size(term.then_branch) + term_size(term.else_branch) + 1
    return 1


def _canonical(term: Term, levels: Dict[VarId, int], depth: int) -> tuple:
    if isinstance(term, Var):
        level = levels.get(term.var)
        return ("free", term.var.id) if level is None else ("bound", depth - level)
    if isinstance(term, Lam):
        shadowed = levels.get(term.var)
        levels[term.var] = depth
        body = _canonical(term.body, levels, depth + 1)
        if shadowed is None:
            del levels[term.var]
        else:
            levels[term.var] = shadowed
        return ("lam", body)
    if isinstance(term, App):
        return ("app", _canonical(term.fun, levels, depth), _canonical(term.arg, levels, depth))
    if isinstance(term, If):
        return (
            "if",
            _canonical(term.cond, levels, depth),
            _canonical(term.then_branch, levels, depth),
            _canonical(term.else_branch, levels, depth),
        )
    if isinstance(term, Bool):
        return ("bool", term.value)
    return ("err",)


def canonical_form(term: Term) -> tuple:
    """Nameless form of ``term``: bound variables become binder distances, free ones keep their ids."""
    return _canonical(term, {}, 0)


def alpha_eq(left: Term, right: Term) -> bool:
    return canonical_form(left) == canonical_form(right)


def is_printable_hint(hint: Optional[str]) -> bool:
    return bool(hint) and hint not in KEYWORDS and (hint[0].isalpha() or hint[0] == "_")


def _base_name(var: VarId, default: str) -> str:
    return var.name_hint if var.name_hint and is_printable_hint(var.name_hint) else default


def unique_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for suffix in count(1):
        candidate = f"{base}{suffix}"
        if candidate not in taken:
            return candidate
    raise AssertionError("unreachable")


class _Printer:
    """Prints terms in the parser's grammar.

    Free variables keep their hints (suffixed when two share one). A binder never reuses
    a free name or the name of an enclosing binder, so printing cannot capture.
    """

    def __init__(self, term: Term):
        self.free_names: Dict[VarId, str] = {}
        for var in sorted(free_vars(term), key=lambda free_var: free_var.id):
            self.free_names[var] = unique_name(_base_name(var, "v"), self.free_names.values())
        self._taken: Set[str] = set(self.free_names.values())
        self._bound: Dict[VarId, str] = {}

    def show(self, term: Term, position: str = "top") -> str:
        if isinstance(term, Var):
            return self._bound.get(term.var) or self.free_names[term.var]
        if isinstance(term, Bool):
            return "true" if term.value else "false"
        if isinstance(term, Err):
            return "err"
        if isinstance(term, App):
            text = f"{self.show(term.fun, 'fun')} {self.show(term.arg, 'arg')}"
            return f"({text})" if position == "arg" else text
        if isinstance(term, Lam):
            text = self._show_lam(term)
        else:
            text = (
                f"if {self.show(term.cond)} then {self.show(term.then_branch)} "
                f"else {self.show(term.else_branch)}"
            )
        return text if position == "top" else f"({text})"

    def _show_lam(self, term: Lam) -> str:
        name = unique_name(_base_name(term.var, "x"), self._taken)
        shadowed = self._bound.get(term.var)
        self._bound[term.var] = name
        self._taken.add(name)
        try:
            return f"\\{name}. {self.show(term.body)}"
        finally:
            self._taken.discard(name)
            if shadowed is None:
                del self._bound[term.var]
            else:
                self._bound[term.var] = shadowed


def print_term(term: Term) -> str:
    return _Printer(term).show(term)


def name_table(term: Term) -> Dict[str, VarId]:
    """Printed name of every free variable of ``term``, as ``parse`` expects it in ``free``."""
    return {name: var for var, name in _Printer(term).free_names.items()}
