class InvalidInputError(ValueError):
    """Raised when an argument lies outside the supported domain."""
    pass
