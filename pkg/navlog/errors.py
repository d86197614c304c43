"""Navlog exceptions."""

from collections import namedtuple


class NavlogError(Exception):
    """Base class for every error raised by navlog."""


class ConfigurationError(NavlogError):
    """Invalid or incomplete configuration."""


class ValidationIssue(namedtuple('ValidationIssue', ['line', 'message'])):
    """One violated invariant of a system description."""

    __slots__ = ()

    def __str__(self):
        if self.line is None:
            return self.message
        return "line {}: {}".format(self.line, self.message)


class SystemValidationError(NavlogError):
    """A system description violates one or more invariants.

    Args:
        issues: List of ValidationIssue entries, one per violated invariant
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super(SystemValidationError, self).__init__(
            "Invalid system description:\n" + "\n".join(
                "  {}".format(issue) for issue in self.issues))


class PositionedSyntaxError(NavlogError):
    """Syntax error carrying the offending line and column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = "line {}, column {}: ".format(line, column)
        super(PositionedSyntaxError, self).__init__(where + message)


class SystemSyntaxError(PositionedSyntaxError):
    """Malformed `.ets` text."""


class FormulaSyntaxError(PositionedSyntaxError):
    """Malformed formula text."""


class UnknownViewError(FormulaSyntaxError):
    """A formula mentions a view outside the declared universe."""


class InvalidQueryError(NavlogError, ValueError):
    """A query violates the precondition of an operation."""


class UniverseTooLargeError(NavlogError):
    """The view universe exceeds the saturation cap."""


class NotDerivedError(NavlogError):
    """An explanation was requested for an atom outside the closure."""


class NotClosedError(NavlogError):
    """A closure is not closed under the rules."""


class InvariantViolation(NavlogError):
    """An internal invariant was found broken."""
