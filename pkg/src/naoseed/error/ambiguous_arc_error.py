class AmbiguousArcError(ArithmeticError):
    """Raised when two seeds are near-antipodal and the great-circle arc is not unique."""
    pass
