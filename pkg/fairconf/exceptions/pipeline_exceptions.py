# fairconf/exceptions/pipeline_exceptions.py
class PipelineException(Exception):
    """Base exception for orchestration errors."""

    code = "PipelineError"


class SlotsExhaustedError(PipelineException):
    """Raised when a scheduling round has fewer free slots than talks."""

    code = "SlotsExhausted"

    def __init__(self, round_index: int, needed: int, available: int):
        self.round_index = round_index
        self.needed = needed
        self.available = available
        super().__init__(
            f"Round {round_index} needs {needed} slots but only {available} remain"
        )


class EmptyGridError(PipelineException):
    """Raised when a sweep grid is empty."""

    code = "EmptyGrid"

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"Sweep grid {name} is empty")


class InvalidPlanError(PipelineException):
    """Raised when a priority plan is inconsistent with the instance."""

    code = "InvalidPlan"

    def __init__(self, message: str = "Invalid priority plan"):
        super().__init__(message)
