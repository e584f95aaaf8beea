# fairconf/exceptions/datagen_exceptions.py
class DatagenException(Exception):
    """Base exception for instance generation errors."""

    code = "DatagenError"


class InvalidDimsError(DatagenException):
    """Raised when requested sizes cannot form a valid instance."""

    code = "InvalidDims"

    def __init__(self, message: str = "Invalid instance dimensions"):
        super().__init__(message)


class InvalidGeneratorSpecError(DatagenException):
    """Raised when a generator spec is inconsistent."""

    code = "InvalidGeneratorSpec"

    def __init__(self, message: str = "Invalid generator spec"):
        super().__init__(message)
