"""Exception hierarchy shared by the model, numerics and CLI layers."""

from __future__ import annotations


class CournotError(Exception):
    """Base class for every error raised by this package."""


class NumericalError(CournotError, ArithmeticError):
    """A computation could not be carried out (CLI exit code 3)."""


class SingularParameterError(NumericalError):
    """The scale parameter sits on a value where the model is undefined."""


class SingularMatrixError(NumericalError):
    """Gaussian elimination met a pivot below the singularity threshold."""


class ConvergenceError(NumericalError):
    """An iterative solver exhausted its budget."""


class ShapeError(CournotError, ValueError):
    """Array or index does not match the game dimensions."""


class NotSymmetricError(CournotError, ValueError):
    pass


class ValidationError(CournotError, ValueError):
    """A configuration has hard rule violations (CLI exit code 2)."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.messages(hard_only=True)))


class ScenarioError(CournotError, ValueError):
    """A scenario document could not be parsed (CLI exit code 1)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(f"{where}{message}")
