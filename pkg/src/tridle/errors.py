"""Exception hierarchy.

Every domain error derives from :class:`TridleError`; the command line maps
these to exit status 1 and prints the class name.
"""


class TridleError(Exception):
    """Base class for all domain errors raised by the package."""


# algebra
class NotDivisible(TridleError, ArithmeticError):
    pass


class DivisionByZero(TridleError, ZeroDivisionError):
    pass


class NonUnitEvaluation(TridleError, ValueError):
    """Evaluation point has x0 or y0 congruent to zero."""


class PolySyntaxError(TridleError, ValueError):
    pass


# diagrams
class PDError(TridleError, ValueError):
    """Malformed planar diagram code."""


class PDSyntaxError(PDError):
    pass


class ArityError(PDError):
    pass


class EdgeCountError(PDError):
    pass


class NonPlanar(PDError):
    pass


class Disconnected(PDError):
    pass


class OrientationAmbiguous(PDError):
    pass


class OrientationConflict(PDError):
    """Edge orientations inferred from different crossings disagree."""


class SignConflict(PDError):
    pass


class UnknownCatalogEntry(TridleError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


# matrices and invariants
class PreconditionViolated(TridleError, ValueError):
    pass


class ShapeError(TridleError, ValueError):
    pass


class MultiComponent(TridleError, ValueError):
    pass


# moves
class InvalidSite(TridleError, ValueError):
    pass


# finite tridles
class NotSolvable(TridleError, ValueError):
    pass


class BudgetExceeded(TridleError, RuntimeError):
    pass
