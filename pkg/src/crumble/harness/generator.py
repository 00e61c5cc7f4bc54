import random
from typing import Dict, List, Tuple

from pydantic import BaseModel, Field, validator

from crumble.syntax import ERR, FALSE, TRUE, App, If, Lam, Term, Var, VarId

_BINDER_NAMES = ("x", "y", "z", "w", "f", "g")


class ConstructorWeights(BaseModel):
    var: float = 4.0
    lam: float = 3.0
    app: float = 4.0
    cond: float = 1.0
    boolean: float = 1.0
    err: float = 0.3

    @validator("*")
    def not_negative(cls, value: float):  # pylint: disable=no-self-argument
        if value < 0:
            raise ValueError(f"weights must not be negative, got {value}")
        return value


class GenConfig(BaseModel):
    max_size: int = 60
    closed: bool = True
    seed: int = 0
    weights: ConstructorWeights = Field(default_factory=ConstructorWeights)
    free_names: Tuple[str, ...] = ("a", "b", "c")

    @validator("max_size")
    def max_size_positive(cls, value: int):  # pylint: disable=no-self-argument
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value


# Smallest term size each constructor can produce.
_MIN_SIZE = {"var": 1, "boolean": 1, "err": 1, "lam": 2, "app": 3, "cond": 4}
_ATOMS = ("var", "boolean", "err")


class _Generator:
    def __init__(self, config: GenConfig):
        self._config = config
        self._rng = random.Random(config.seed)
        self._free = [] if config.closed else [VarId.fresh(name) for name in config.free_names]

    def term(self) -> Term:
        return self._sized(self._rng.randint(1, self._config.max_size), [])

    def _choose(self, size: int, scope: List[VarId]) -> str:
        weights: Dict[str, float] = self._config.weights.dict()
        if not scope and not self._free:
            weights["var"] = 0.0
        compound = {name: weight for name, weight in weights.items() if name not in _ATOMS and _MIN_SIZE[name] <= size}
        candidates = compound if size > 1 and any(compound.values()) else {name: weights[name] for name in _ATOMS}
        if not any(candidates.values()):
            return "boolean"
        names = sorted(candidates)
        return self._rng.choices(names, weights=[candidates[name] for name in names])[0]

    def _sized(self, size: int, scope: List[VarId]) -> Term:
        constructor = self._choose(size, scope)
        rng = self._rng
        if constructor == "var":
            return Var(rng.choice(scope + self._free))
        if constructor == "boolean":
            return rng.choice((TRUE, FALSE))
        if constructor == "err":
            return ERR
        if constructor == "lam":
            var = VarId.fresh(rng.choice(_BINDER_NAMES))
            return Lam(var, self._sized(size - 1, scope + [var]))
        if constructor == "app":
            left = rng.randint(1, size - 2)
            return App(self._sized(left, scope), self._sized(size - 1 - left, scope))
        cond = rng.randint(1, size - 3)
        then_size = rng.randint(1, size - 2 - cond)
        return If(
            self._sized(cond, scope),
            self._sized(then_size, scope),
            self._sized(size - 1 - cond - then_size, scope),
        )


def gen_term(config: GenConfig) -> Term:
    """Random term of size at most ``config.max_size``; the same config always gives the same shape."""
    return _Generator(config).term()
