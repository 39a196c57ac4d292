class CodiffError(Exception):
    """Base class for every error raised by the engine."""


class InputError(CodiffError, ValueError):
    """Malformed user input: text, labels, shapes, fields."""


class ScalarParseError(InputError):
    pass


class FieldMismatchError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class ZeroGeneratorError(InputError):
    pass


class PoleError(CodiffError, ZeroDivisionError):
    pass


class StructureError(CodiffError):
    """A structure handed to an operation fails the axioms that operation relies on."""


class NotClosedError(CodiffError):
    """A subspace that has to be closed under (co)actions is not."""


class RewriteBudgetExceeded(CodiffError):
    pass


class TruncationOverflow(CodiffError):
    """A product left the total region of a filtered Hopf algebra."""

    def __init__(self, left: str, right: str, degree: int, bound: int):
        self.left = left
        self.right = right
        self.degree = degree
        self.bound = bound
        super().__init__(f"{left} * {right} has degree {degree} > {bound}")
