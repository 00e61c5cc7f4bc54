from crumble.decorators.pass_app_context import pass_app_context
from crumble.decorators.source import load_term, mode_option, source_argument
