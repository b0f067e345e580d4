class SeedFormatError(ValueError):
    """Raised when a seed file cannot be decoded."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset
