class DegenerateOriginError(ArithmeticError):
    """Raised when a norm-dependent operation meets a zero-norm seed."""
    pass
