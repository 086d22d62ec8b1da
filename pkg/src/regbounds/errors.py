"""Exception hierarchy shared by every module."""


class RegboundsError(Exception):
    pass


class InputError(RegboundsError, ValueError):
    """Malformed or mathematically invalid input (CLI exit status 2)."""


class SingularMatrixError(InputError):
    pass


class ProductFormulaError(InputError):
    def __init__(self, unit, residual):
        self.unit = unit
        self.residual = residual
        super().__init__(f"unit {unit!r} violates the product formula (residual {residual})")


class ConsistencyError(RegboundsError):
    """Two independent evaluations of the same quantity disagreed beyond tolerance."""


class EnumerationCapError(RegboundsError):
    """Radius growth for successive minima exceeded its cap."""
