"""Python bindings for the miniK checker, linter and evaluator.

Every command returns ``(exit_code, output)`` with the same text the CLI
prints.
"""

from ._minik import (
    ParseError,
    check,
    is_subtype,
    lint,
    pretty_print,
    run,
    run_corpus,
    sites,
)

__all__ = [
    "ParseError",
    "check",
    "is_subtype",
    "lint",
    "pretty_print",
    "run",
    "run_corpus",
    "sites",
]
