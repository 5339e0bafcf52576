"""Exception types shared across the package."""


class SimplexionError(Exception):
    pass


class ModulusMismatch(SimplexionError, ValueError):
    pass


class NotAUnit(SimplexionError, ArithmeticError):
    """Raised when an element with gcd(value, D) > 1 is inverted."""


class Singular(SimplexionError, ArithmeticError):
    """Raised when a matrix determinant is not a unit of Z_D."""


class DimensionMismatch(SimplexionError, ValueError):
    pass


class BudgetExceeded(SimplexionError):
    """Raised before a search whose candidate space is larger than allowed."""


class DomainViolation(SimplexionError, ValueError):
    """Raised when a catalog family is instantiated outside its parameter domain."""
