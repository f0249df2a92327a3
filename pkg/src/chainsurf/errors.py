"""Exception hierarchy. ``exit_code`` is what the CLI returns for each class."""


class ChainsurfError(Exception):
    exit_code = 1


class DomainError(ChainsurfError, ValueError):
    exit_code = 2


class GenerationFailure(DomainError):
    """Random graph generation ran out of attempts."""

    def __init__(self, message, attempts=0):
        super().__init__(message)
        self.attempts = attempts


class StructureError(DomainError):
    pass


class UnsupportedError(DomainError):
    pass


class DegenerateFamilyError(DomainError):
    pass


class BoundUndefinedError(DomainError):
    pass


class CertificationRefused(ChainsurfError):
    exit_code = 3


class NumericalError(ChainsurfError, ArithmeticError):
    exit_code = 4
