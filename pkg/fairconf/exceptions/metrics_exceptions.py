# fairconf/exceptions/metrics_exceptions.py
class MetricsException(Exception):
    """Base exception for metric evaluation errors."""

    code = "MetricsError"


class DegenerateParticipantError(MetricsException):
    """Raised when a participant's ideal cumulative gain is zero."""

    code = "DegenerateParticipant"

    def __init__(self, participant: int):
        self.participant = participant
        super().__init__(f"Participant {participant} has zero ideal cumulative gain")


class DegenerateTalkError(MetricsException):
    """Raised when a talk's ideal expected crowd is zero."""

    code = "DegenerateTalk"

    def __init__(self, talk: int):
        self.talk = talk
        super().__init__(f"Talk {talk} has zero ideal expected crowd")


class AllZeroError(MetricsException):
    """Raised when an inequality index is requested for an all-zero vector."""

    code = "AllZero"

    def __init__(self, message: str = "Gini index is undefined for an all-zero vector"):
        super().__init__(message)


class NegativeValuesError(MetricsException):
    """Raised when an inequality index receives negative values."""

    code = "NegativeValues"

    def __init__(self, message: str = "Gini index requires non-negative values"):
        super().__init__(message)
