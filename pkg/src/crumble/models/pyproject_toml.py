from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Extra, Field, validator

from crumble.constants import DEFAULT_FUEL, DEFAULT_RECURSION_LIMIT


class CommandConfig(BaseModel):
    """Defaults for one command's options, looked up by option name."""

    def get(self, option_name: str, default: Any = None) -> Any:
        return getattr(self, option_name, default)

    class Config:
        extra = Extra.allow


class RunConfig(CommandConfig):
    fuel: Optional[int] = None
    merge_sub_var: Optional[bool] = None


class CheckConfig(CommandConfig):
    count: int = 500
    seed: int = 0
    max_size: int = 60
    fuel: Optional[int] = None
    workers: int = 1

    @validator("count", "max_size", "workers")
    def must_be_positive(cls, value: int):  # pylint: disable=no-self-argument
        if value < 1:
            raise ValueError(f"must be at least 1, got {value}")
        return value


class BenchConfig(CommandConfig):
    family: str = "kennedy"
    sizes: List[int] = Field(default_factory=lambda: [2**power for power in range(3, 11)])
    fuel: Optional[int] = None

    @validator("sizes")
    def sizes_not_empty(cls, value: List[int]):  # pylint: disable=no-self-argument
        if not value or min(value) < 1:
            raise ValueError("must be a non-empty list of positive sizes")
        return value


class CrumbleConfig(BaseModel):
    fuel: int = DEFAULT_FUEL
    recursion_limit: int = DEFAULT_RECURSION_LIMIT
    merge_sub_var: bool = False
    run: RunConfig = Field(default_factory=RunConfig)
    check: CheckConfig = Field(default_factory=CheckConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)

    @validator("fuel")
    def fuel_not_negative(cls, value: int):  # pylint: disable=no-self-argument
        if value < 0:
            raise ValueError(f"must not be negative, got {value}")
        return value

    def command_config(self, command_name: str) -> Optional[CommandConfig]:
        return getattr(self, command_name, None) if command_name in {"run", "check", "bench"} else None

    class Config:
        extra = Extra.allow


class Poetry(BaseModel):
    name: str
    version: str
    scripts: Dict[str, str] = Field(default_factory=dict)
    dependencies: Dict[str, Any] = Field(default_factory=dict)

    class Config:
        extra = Extra.allow


class Tool(BaseModel):
    poetry: Optional[Poetry] = None
    crumble: CrumbleConfig = Field(default_factory=CrumbleConfig)

    class Config:
        allow_population_by_field_name = True


class PyprojectToml(BaseModel):
    file_path: Optional[Path] = None
    tool: Tool = Field(default_factory=Tool)

    class Config:
        extra = Extra.allow
