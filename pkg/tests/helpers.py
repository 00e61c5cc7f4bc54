from typing import List, NamedTuple, Optional, Tuple

from crumble.crumbling import Bite, Crumble, Env
from crumble.syntax import VarId


class CrumbleContext(NamedTuple):
    """``(bite, env)[hole <- <.>]``; the empty context has neither bite nor hole."""

    bite: Optional[Bite] = None
    env: Env = ()
    hole: Optional[VarId] = None


def plug(context: CrumbleContext, crumble: Crumble) -> Crumble:
    if context.hole is None:
        return crumble
    assert context.bite is not None
    return Crumble(context.bite, context.env + ((context.hole, crumble.bite),) + crumble.env)


def decompose(crumble: Crumble) -> List[Tuple[CrumbleContext, Crumble]]:
    """Every way of splitting ``crumble`` into an environment context and the crumble in its hole."""
    splits = [(CrumbleContext(), crumble)]
    for index, (var, bite) in enumerate(crumble.env):
        context = CrumbleContext(crumble.bite, crumble.env[:index], var)
        splits.append((context, Crumble(bite, crumble.env[index + 1 :])))
    return splits
