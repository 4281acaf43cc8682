# Helpers shared by the command modules: value parsing, the exit-code guard
# and table output.

from .output import CliState, FormatOption, OutputFormat, OutputOption, TolOption, emit_table, quadrature_spec, state_from
from .parsing import parse_complex, parse_grid, parse_int_list
from .guard import EXIT_CHECK_FAILURE, EXIT_INVALID_INPUT, EXIT_NUMERIC_FAILURE, guarded

__all__ = [
    "CliState",
    "OutputOption",
    "FormatOption",
    "OutputFormat",
    "TolOption",
    "emit_table",
    "quadrature_spec",
    "state_from",
    "parse_complex",
    "parse_grid",
    "parse_int_list",
    "guarded",
    "EXIT_CHECK_FAILURE",
    "EXIT_INVALID_INPUT",
    "EXIT_NUMERIC_FAILURE",
]
