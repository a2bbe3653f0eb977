"""Exception hierarchy.

Validation problems (bad input, mismatched operands) derive from
:class:`ValidationError`; numerical/mathematical failures derive from
:class:`MathError`. The CLI maps the two families to exit codes 1 and 2.
"""


class GARankError(Exception):
    pass


class ValidationError(GARankError, ValueError):
    pass


class SignatureMismatchError(ValidationError):
    pass


class ModeMismatchError(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class MathError(GARankError, ArithmeticError):
    pass


class SingularMultivectorError(MathError):
    pass


class NotInImageError(MathError):
    pass


class ClosingIdentityError(MathError):
    """The Faddeev-LeVerrier recursion did not close on a scalar."""


class NotNormalError(MathError):
    pass


class VerificationError(MathError):
    pass
