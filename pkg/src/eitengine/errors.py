"""Exception hierarchy shared by the engine modules."""


class EngineError(Exception):
    """Base class for all errors raised by eitengine."""


class DomainError(EngineError, ValueError):
    """An argument lies outside the domain of a formula (e.g. T <= 0)."""


class InvalidParamsError(EngineError, ValueError):
    """Engine parameters violate one or more invariants."""

    def __init__(self, report):
        self.report = report
        codes = ", ".join(v.code for v in report.violations)
        super().__init__(f"invalid engine parameters: {codes}")


class DegenerateInputError(EngineError, ValueError):
    """A closed form has a vanishing denominator for these inputs."""


class MissingParameterError(EngineError, ValueError):
    pass


class ThresholdError(EngineError):
    """The medium is at or above the lasing-without-inversion threshold.

    ``condition`` names the discriminant that changed sign and ``margin`` its
    value, so callers can report how far past threshold the input is.
    """

    def __init__(self, message, condition="", margin=float("nan")):
        super().__init__(message)
        self.condition = condition
        self.margin = margin


class NumericalDegeneracyError(EngineError, ArithmeticError):
    def __init__(self, message, condition_number=float("nan")):
        super().__init__(message)
        self.condition_number = condition_number
