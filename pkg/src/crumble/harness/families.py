from typing import Callable, Dict

from crumble.syntax import App, Lam, Term, Var, VarId


def kennedy_family(n: int) -> Term:
    """Let-bound chain ``z1 x0`` where ``zi = λxi. b (z(i+1) xi)`` and ``zn = λxn. b (b xn)``.

    Lets are encoded as redexes ``(λzi. ...) (λxi. ...)``, with ``zn`` outermost, and ``b`` and
    ``x0`` stay free. Once the n lets are fired the state holds the chain of n abstraction entries
    where every call appends a body environment, the shape ANF evaluation pays quadratically for.
    """
    if n < 1:
        raise ValueError(f"The family starts at 1, got {n}.")
    b = Var(VarId.fresh("b"))
    xs = [VarId.fresh(f"x{index}") for index in range(n + 1)]
    zs = {index: VarId.fresh(f"z{index}") for index in range(1, n + 1)}

    def link(index: int) -> Term:
        call = App(Var(zs[index + 1]), Var(xs[index])) if index < n else App(b, Var(xs[index]))
        return Lam(xs[index], App(b, call))

    body: Term = App(Var(zs[1]), Var(xs[0]))
    for index in range(1, n + 1):
        body = App(Lam(zs[index], body), link(index))
    return body


FAMILIES: Dict[str, Callable[[int], Term]] = {"kennedy": kennedy_family}
