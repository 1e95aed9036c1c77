"""Shared exception types.

ParseError covers malformed input files (bad JSON, schema violations,
illegal cell values). ValidationError covers precondition violations on
otherwise well-formed data (out-of-range parameters, shape mismatches,
unknown statistic names). The CLI maps ParseError to exit code 1 and
ValidationError to exit code 2.
"""


class ParseError(ValueError):
    """An input file could not be parsed or fails its schema."""


class ValidationError(ValueError):
    """A well-formed value violates an operation's preconditions."""
