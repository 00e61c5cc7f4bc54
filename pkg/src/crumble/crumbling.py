"""Crumbled forms: terms where applications only nest values, with sharing in explicit substitutions.

A crumble is a bite together with an environment of entries ``[x <- b]``. An entry binds its
variable in everything on its left, so the bite sees every entry. ``Env`` is a plain tuple here;
the machine keeps its own node chains and converts to and from this representation.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from crumble.syntax import App as TermApp
from crumble.syntax import Bool, Err
from crumble.syntax import If as TermIf
from crumble.syntax import Lam, Term, Var, VarId, is_printable_hint, is_value, print_term, unique_name


@dataclass(frozen=True)
class CLam:
    var: VarId
    body: "Crumble"


@dataclass(frozen=True)
class BApp:
    fun: "CrumbledValue"
    arg: "CrumbledValue"


@dataclass(frozen=True)
class BIf:
    cond: "CrumbledValue"
    then_branch: "Crumble"
    else_branch: "Crumble"


CrumbledValue = Union[Var, CLam, Bool, Err]
Bite = Union[Var, CLam, Bool, Err, BApp, BIf]
Entry = Tuple[VarId, Bite]
Env = Tuple[Entry, ...]


@dataclass(frozen=True)
class Crumble:
    bite: Bite
    env: Env = ()


class NotAValue(Exception):
    def __init__(self, term: Term):
        super().__init__(f"'{print_term(term)}' is not a value.")
        self.term = term


def is_crumbled_value(bite: Bite) -> bool:
    return isinstance(bite, (Var, CLam, Bool, Err))


def is_practical_value(bite: Bite) -> bool:
    return isinstance(bite, (CLam, Bool, Err))


def is_v_crumble(crumble: Crumble) -> bool:
    return is_practical_value(crumble.bite) and all(is_practical_value(bite) for _, bite in crumble.env)


class _Crumbler:
    """Translation in one pass.

    Entries of a crumble under construction are collected rightmost first and reversed once, so
    prepending ``[x <- b]`` in front of an argument's environment is an append. The fresh variable
    naming a non-value operand is allocated after that operand has been translated.
    """

    def crumble(self, term: Term) -> Crumble:
        entries: List[Entry] = []
        bite = self._bite(term, entries)
        entries.reverse()
        return Crumble(bite, tuple(entries))

    def value(self, term: Term) -> CrumbledValue:
        if isinstance(term, (Var, Bool, Err)):
            return term
        if isinstance(term, Lam):
            return CLam(term.var, self.crumble(term.body))
        raise NotAValue(term)

    def _bite(self, term: Term, entries: List[Entry]) -> Bite:
        if isinstance(term, TermApp):
            arg = self._operand(term.arg, entries)
            fun = self._operand(term.fun, entries)
            return BApp(fun, arg)
        if isinstance(term, TermIf):
            cond = self._operand(term.cond, entries)
            return BIf(cond, self.crumble(term.then_branch), self.crumble(term.else_branch))
        return self.value(term)

    def _operand(self, term: Term, entries: List[Entry]) -> CrumbledValue:
        if is_value(term):
            return self.value(term)
        bite = self._bite(term, entries)
        var = VarId.fresh()
        entries.append((var, bite))
        return Var(var)


def translate(term: Term) -> Crumble:
    return _Crumbler().crumble(term)


def translate_value(term: Term) -> CrumbledValue:
    return _Crumbler().value(term)


class _ReadBack:
    """Read-back in one traversal.

    Entries are read back rightmost first into ``scope``, so every occurrence of an entry variable
    is replaced by one shared term. Abstraction binders are renamed fresh, so no term put in place
    of a variable can be captured.
    """

    def __init__(self):
        self._scope: Dict[VarId, Term] = {}

    def _bind(self, var: VarId, term: Term) -> Optional[Term]:
        shadowed = self._scope.get(var)
        self._scope[var] = term
        return shadowed

    def _unbind(self, var: VarId, shadowed: Optional[Term]) -> None:
        if shadowed is None:
            del self._scope[var]
        else:
            self._scope[var] = shadowed

    def entries(self, env: Env) -> List[Tuple[VarId, Term, Optional[Term]]]:
        bound = []
        for var, bite in reversed(env):
            term = self.bite(bite)
            bound.append((var, term, self._bind(var, term)))
        return bound

    def crumble(self, crumble: Crumble) -> Term:
        bound = self.entries(crumble.env)
        term = self.bite(crumble.bite)
        for var, _, shadowed in reversed(bound):
            self._unbind(var, shadowed)
        return term

    def value(self, value: CrumbledValue) -> Term:
        if isinstance(value, Var):
            return self._scope.get(value.var, value)
        if isinstance(value, CLam):
            renamed = VarId.fresh(value.var.name_hint)
            shadowed = self._bind(value.var, Var(renamed))
            body = self.crumble(value.body)
            self._unbind(value.var, shadowed)
            return Lam(renamed, body)
        return value

    def bite(self, bite: Bite) -> Term:
        if isinstance(bite, BApp):
            return TermApp(self.value(bite.fun), self.value(bite.arg))
        if isinstance(bite, BIf):
            return TermIf(self.value(bite.cond), self.crumble(bite.then_branch), self.crumble(bite.else_branch))
        return self.value(bite)


def readback_value(value: CrumbledValue) -> Term:
    return _ReadBack().value(value)


def readback_bite(bite: Bite) -> Term:
    return _ReadBack().bite(bite)


def readback(crumble: Crumble) -> Term:
    """``(b, e[x <- b'])`` reads back as the read-back of ``(b, e)`` with ``x`` replaced by that of ``b'``."""
    return _ReadBack().crumble(crumble)


def readback_suffixes(env: Env) -> List[Term]:
    """The i-th term is the read-back of the i-th entry's bite under the entries on its right."""
    return [term for _, term, _ in reversed(_ReadBack().entries(env))]


def append(crumble: Crumble, env: Iterable[Entry]) -> Crumble:
    return Crumble(crumble.bite, crumble.env + tuple(env))


def bite_free_vars(bite: Bite) -> FrozenSet[VarId]:
    if isinstance(bite, Var):
        return frozenset((bite.var,))
    if isinstance(bite, CLam):
        return crumble_free_vars(bite.body) - {bite.var}
    if isinstance(bite, BApp):
        return bite_free_vars(bite.fun) | bite_free_vars(bite.arg)
    if isinstance(bite, BIf):
        return (
            bite_free_vars(bite.cond) | crumble_free_vars(bite.then_branch) | crumble_free_vars(bite.else_branch)
        )
    return frozenset()


def crumble_free_vars(crumble: Crumble) -> FrozenSet[VarId]:
    free = bite_free_vars(crumble.bite)
    for var, bite in crumble.env:
        free = (free - {var}) | bite_free_vars(bite)
    return free


def _outside_binders(crumble: Crumble, binders: List[VarId]) -> None:
    for bite in (crumble.bite, *(bite for _, bite in crumble.env)):
        if isinstance(bite, BIf):
            _outside_binders(bite.then_branch, binders)
            _outside_binders(bite.else_branch, binders)
    binders.extend(var for var, _ in crumble.env)


def is_well_named(crumble: Crumble) -> bool:
    """Entry binders outside abstractions, if-branches included, are pairwise distinct."""
    binders: List[VarId] = []
    _outside_binders(crumble, binders)
    return len(binders) == len(set(binders))


def var_measure(crumble: Crumble) -> int:
    return sum(isinstance(bite, Var) for bite in (crumble.bite, *(bite for _, bite in crumble.env)))


def bite_size(bite: Bite) -> int:
    if isinstance(bite, CLam):
        return crumble_size(bite.body) + 1
    if isinstance(bite, BApp):
        return bite_size(bite.fun) + bite_size(bite.arg) + 1
    if isinstance(bite, BIf):
        return bite_size(bite.cond) + crumble_size(bite.then_branch) + crumble_size(bite.else_branch) + 1
    return 1


def crumble_size(crumble: Crumble) -> int:
    return bite_size(crumble.bite) + sum(bite_size(bite) for _, bite in crumble.env)


def len_measure(crumble: Crumble) -> int:
    return 1 + len(crumble.env)


def _bodies(bite: Bite) -> Iterable[Crumble]:
    if isinstance(bite, CLam):
        yield bite.body
    elif isinstance(bite, BApp):
        yield from _bodies(bite.fun)
        yield from _bodies(bite.arg)
    elif isinstance(bite, BIf):
        yield from _bodies(bite.cond)
        yield bite.then_branch
        yield bite.else_branch


def body_bound_L(crumble: Crumble) -> int:  # pylint: disable=invalid-name
    """Longest environment, counted with ``len_measure``, among all bodies nested anywhere in ``crumble``."""
    longest = 0
    pending = [crumble]
    while pending:
        current = pending.pop()
        for bite in (current.bite, *(bite for _, bite in current.env)):
            for body in _bodies(bite):
                longest = max(longest, len_measure(body))
                pending.append(body)
    return longest


class _Canonicalizer:
    """Nameless form of crumbles: binders are numbered in order of binding, free variables keep ids."""

    def __init__(self):
        self._numbers: Dict[VarId, int] = {}
        self._next = 0

    def _bind(self, var: VarId) -> Optional[int]:
        shadowed = self._numbers.get(var)
        self._numbers[var] = self._next
        self._next += 1
        return shadowed

    def _unbind(self, var: VarId, shadowed: Optional[int]) -> None:
        if shadowed is None:
            del self._numbers[var]
        else:
            self._numbers[var] = shadowed

    def crumble(self, crumble: Crumble) -> tuple:
        entries = []
        restore = []
        for var, bite in reversed(crumble.env):
            entries.append(self.bite(bite))
            restore.append((var, self._bind(var)))
        bite = self.bite(crumble.bite)
        for var, shadowed in reversed(restore):
            self._unbind(var, shadowed)
        return ("crumble", bite, tuple(entries))

    def bite(self, bite: Bite) -> tuple:
        if isinstance(bite, Var):
            number = self._numbers.get(bite.var)
            return ("free", bite.var.id) if number is None else ("bound", number)
        if isinstance(bite, CLam):
            shadowed = self._bind(bite.var)
            body = self.crumble(bite.body)
            self._unbind(bite.var, shadowed)
            return ("lam", body)
        if isinstance(bite, BApp):
            return ("app", self.bite(bite.fun), self.bite(bite.arg))
        if isinstance(bite, BIf):
            return ("if", self.bite(bite.cond), self.crumble(bite.then_branch), self.crumble(bite.else_branch))
        if isinstance(bite, Bool):
            return ("bool", bite.value)
        return ("err",)


def alpha_eq_crumble(left: Crumble, right: Crumble) -> bool:
    """Structural equality up to a consistent renaming of entry and abstraction binders."""
    return _Canonicalizer().crumble(left) == _Canonicalizer().crumble(right)


class _CrumblePrinter:
    def __init__(self):
        self._names: Dict[VarId, str] = {}
        self._taken: Set[str] = set()
        self._unnamed = 0

    def name(self, var: VarId) -> str:
        if var not in self._names:
            if var.name_hint and is_printable_hint(var.name_hint):
                base = var.name_hint
            else:
                self._unnamed += 1
                base = f"_{self._unnamed}"
            self._names[var] = unique_name(base, self._taken)
            self._taken.add(self._names[var])
        return self._names[var]

    def crumble(self, crumble: Crumble) -> str:
        text = f"({self.bite(crumble.bite)})"
        return text + "".join(f"[{self.name(var)}<-{self.bite(bite)}]" for var, bite in crumble.env)

    def value(self, value: CrumbledValue) -> str:
        text = self.bite(value)
        return f"({text})" if isinstance(value, CLam) else text

    def bite(self, bite: Bite) -> str:
        if isinstance(bite, Var):
            return self.name(bite.var)
        if isinstance(bite, Bool):
            return "true" if bite.value else "false"
        if isinstance(bite, Err):
            return "err"
        if isinstance(bite, CLam):
            return f"\\{self.name(bite.var)}. {self.crumble(bite.body)}"
        if isinstance(bite, BApp):
            return f"{self.value(bite.fun)} {self.value(bite.arg)}"
        return (
            f"if {self.value(bite.cond)} then {self.crumble(bite.then_branch)} "
            f"else {self.crumble(bite.else_branch)}"
        )


def print_crumble(crumble: Crumble) -> str:
    """Canonical text ``(bite)[x<-bite]...``.

    Each variable gets a name unique within the printout, so the text does not depend on the
    global id counter: hinted variables keep their hint (suffixed on clashes), the others are
    numbered ``_1, _2, ...`` in order of appearance.
    """
    return _CrumblePrinter().crumble(crumble)
