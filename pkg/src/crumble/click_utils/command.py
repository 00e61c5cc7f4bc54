import logging
from dataclasses import dataclass
from importlib import import_module
from pathlib import Path
from types import ModuleType
from typing import Dict, Iterator, List, Mapping, Union

import click

_LOG = logging.getLogger(__name__)

COMMANDS_PACKAGE = "crumble.commands"


@dataclass(frozen=True)
class _Command:
    name: str
    command: click.Command
    module_name: str


def _package_files(package: Union[str, ModuleType]) -> List[str]:
    module = import_module(package) if isinstance(package, str) else package
    assert module.__file__ is not None, f"Package '{module.__name__}' has no location."
    return sorted(path.name for path in Path(module.__file__).parent.iterdir())


def find_commands(package: Union[str, ModuleType] = COMMANDS_PACKAGE) -> List[_Command]:
    """Finds all instances of ``click.Command`` in the modules of ``package``.

    Modules starting with an underscore are skipped, the package is not traversed recursively.
    """
    package_name = package if isinstance(package, str) else package.__name__
    commands: List[_Command] = []

    for filename in _package_files(package):
        if not filename.endswith(".py") or filename.startswith("_"):
            continue
        module_name = f"{package_name}.{filename[:-3]}"
        module = import_module(module_name)
        commands.extend(
            _Command(name=obj.name, command=obj, module_name=module_name)
            for obj_name, obj in vars(module).items()
            if not obj_name.startswith("_") and isinstance(obj, click.Command) and obj.name is not None
        )

    return commands


class CommandRegistry(Mapping):
    """Commands by name. A later module registering an existing name replaces the earlier command."""

    def __init__(self, package: Union[str, ModuleType] = COMMANDS_PACKAGE):
        self._commands: Dict[str, _Command] = {}
        for command in find_commands(package):
            self._register(command)

    def __len__(self) -> int:
        return len(self._commands)

    def __getitem__(self, key: str) -> _Command:
        return self._commands[key]

    def __iter__(self) -> Iterator[str]:
        return iter(self._commands)

    def _register(self, command: _Command):
        existing_command = self._commands.get(command.name)
        if existing_command:
            _LOG.debug(
                f"Using command '{command.name}' from '{command.module_name}'. "
                f"Previously registered by '{existing_command.module_name}'."
            )
        self._commands[command.name] = command
