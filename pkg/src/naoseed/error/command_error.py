class CommandError(Exception):
    """Raised by controllers; carries the process exit code for the failed command."""

    def __init__(self, exit_code: int, detail: str):
        super().__init__(detail)
        self.exit_code = exit_code
        self.detail = detail
