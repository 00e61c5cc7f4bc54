from logging import getLogger
from typing import Any, Optional

import click
from click import BadParameter

from crumble.constants import PYPROJECT_TOML_FILENAME
from crumble.models import AppContext

_LOG = getLogger(__name__)


class SetOptionFromConfigCallback:
    """If an option is not set on the command line, the config value is used instead.

    The value is looked up at ``tool.crumble.<COMMAND NAME>.<OPTION NAME>`` and, for options
    shared by all commands such as ``fuel``, at ``tool.crumble.<OPTION NAME>`` after that.
    """

    def __init__(self, command_argument_name: str, config_option_name: Optional[str] = None):
        self.config_option_name = config_option_name or command_argument_name
        self.command_argument_name = command_argument_name

    def _type_cast_value(self, ctx: click.Context, param: click.Parameter, value_from_config: Any) -> Any:
        try:
            return param.type_cast_value(ctx, value_from_config)
        except BadParameter as exc:
            exc.param_hint = (
                f"the '{ctx.info_name}.{self.config_option_name}' config option in {PYPROJECT_TOML_FILENAME} file"
            )
            raise

    def __call__(self, ctx: click.Context, param: click.Parameter, value: Any) -> Any:
        """Load passed arguments from config if none given on command line."""
        # Command line options have higher priority. Return them instead of options from the config file.
        if value is not None:
            return value

        app_context = ctx.find_object(AppContext)
        if app_context is None:
            raise RuntimeError("AppContext was expected to be set but none found.")

        config = app_context.config
        command_config = config.command_config(ctx.command.name or "")
        value_from_config = None if command_config is None else command_config.get(self.config_option_name)
        if value_from_config is None:
            value_from_config = getattr(config, self.config_option_name, None)
        if value_from_config is None:
            return value

        _LOG.debug(f"Option '{self.command_argument_name}' taken from config: {value_from_config!r}")
        return self._type_cast_value(ctx, param, value_from_config)
