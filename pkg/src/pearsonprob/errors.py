"""Exception hierarchy shared by all modules."""


class PearsonError(Exception):
    """Base class for every error raised by this package."""


class DegenerateSample(PearsonError, ValueError):
    """Sample has zero variance."""


class InvalidMoments(PearsonError, ValueError):
    """Central moments violate beta2 > beta1 + 1 or a positivity constraint."""


class FitFailure(PearsonError, ArithmeticError):
    """A fitted parameter fell outside the range its density form requires."""

    def __init__(self, type_name, parameter, value):
        self.type_name = type_name
        self.parameter = parameter
        self.value = value
        super().__init__(f"type {type_name}: parameter {parameter}={value!r} is out of range")


class NonConvergence(PearsonError, ArithmeticError):
    """Integration or root search exhausted its budget before meeting tolerance."""


class InvalidOptions(PearsonError, ValueError):
    """Settings or plot options outside their allowed range."""
