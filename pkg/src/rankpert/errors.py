"""Exception types shared across the package."""


class InputError(ValueError):
    """Bad user input: malformed values, wrong shapes, non-monic targets."""


class FieldMismatchError(InputError):
    pass


class DimensionError(InputError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class VerificationError(RuntimeError):
    """An internal postcondition failed. Always an implementation bug."""


class IncompleteJordanData(ValueError):
    """The Jordan data does not cover every eigenvalue, so the check is unsound."""


class BudgetExceeded(RuntimeError):
    pass


class InfeasibleError(ValueError):
    """No perturbation of the requested rank reaches the target polynomial.

    The feasibility certificate explaining why is kept on ``certificate``.
    """

    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"infeasible: required divisor {certificate.required_divisor} "
            f"does not divide the target polynomial"
        )
