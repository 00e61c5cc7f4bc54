import os
from pathlib import Path
from typing import Any, List, Optional

import click
import toml
from pydantic import ValidationError

from crumble.click_utils.command import CommandRegistry
from crumble.constants import PYPROJECT_TOML_FILENAME, ExitCode
from crumble.harness import CheckFailure
from crumble.internal_parameters.help import exit_codes_epilog, extended_help_option
from crumble.internal_parameters.verbosity import log_level_option
from crumble.machine import OpenTermError
from crumble.models.app_context import AppContext
from crumble.models.pyproject_toml import PyprojectToml
from crumble.syntax import ParseError


class Commands(click.MultiCommand):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self._project_root = Path(os.getcwd())
        pyproject_toml_path = (self._project_root / PYPROJECT_TOML_FILENAME).relative_to(self._project_root)

        # Listing commands must not fail. The exception is shown only when a command is executed.
        self._pyproject_toml_validation_error: Optional[ValidationError] = None

        try:
            self._pyproject_toml = PyprojectToml(file_path=pyproject_toml_path, **toml.load(pyproject_toml_path))
        except ValidationError as exc:
            self._pyproject_toml = PyprojectToml()
            self._pyproject_toml_validation_error = exc
        except FileNotFoundError:
            self._pyproject_toml = PyprojectToml()

        self._command_registry = CommandRegistry()

    def list_commands(self, ctx: click.Context) -> List[str]:
        """Override as MultiCommand always returns []."""
        del ctx
        return sorted(self._command_registry)

    def get_command(self, ctx: click.Context, cmd_name: str) -> Optional[click.Command]:
        """Override to give all commands a common ``AppContext`` or fail if ``pyproject.toml`` is broken."""
        cmd = self._command_registry.get(cmd_name, None)
        if cmd is None:
            return None

        if ctx.resilient_parsing:
            return cmd.command

        if self._pyproject_toml_validation_error:
            click.secho(
                f"Crumble appears to be misconfigured: {self._pyproject_toml_validation_error}", fg="red", err=True
            )
            raise click.Abort() from self._pyproject_toml_validation_error

        ctx.obj = AppContext(project_root=self._project_root, pyproject_toml=self._pyproject_toml)
        return cmd.command

    def invoke(self, ctx: click.Context) -> Any:
        """Override to turn domain errors into ``click.exceptions.Exit`` with the matching exit code."""
        try:
            return super().invoke(ctx)
        except ParseError as exc:
            click.secho(f"Parse error: {exc}", fg="red", err=True)
            raise click.exceptions.Exit(ExitCode.USAGE_ERROR.value)
        except OpenTermError as exc:
            click.secho(str(exc), fg="red", err=True)
            raise click.exceptions.Exit(ExitCode.OPEN_TERM.value)
        except CheckFailure as exc:
            # the failing terms were listed by the command already
            click.secho(f"{len(exc.reports)} term(s) failed the cross-check.", fg="red", err=True)
            raise click.exceptions.Exit(ExitCode.CHECK_FAILURE.value)


@click.group(cls=Commands, epilog=exit_codes_epilog())
@extended_help_option
@click.version_option()
@log_level_option
def main(log_level=None):
    del log_level


if __name__ == "__main__":
    main()
