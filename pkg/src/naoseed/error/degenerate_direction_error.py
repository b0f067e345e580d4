class DegenerateDirectionError(ArithmeticError):
    """Raised when a mean direction cannot be normalized (mean too close to the origin)."""
    pass
