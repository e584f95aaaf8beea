# fairconf/exceptions/solver_exceptions.py
class SolverException(Exception):
    """Base exception for optimization errors."""

    code = "SolverError"


class BudgetExceededError(SolverException):
    """Raised when exhaustive enumeration would exceed its budget."""

    code = "BudgetExceeded"

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"Exact enumeration needs {required} schedules, budget is {budget}"
        )


class InfeasibleError(SolverException):
    """Raised when the relaxed program reports infeasibility."""

    code = "Infeasible"

    def __init__(self, message: str = "Linear program is infeasible"):
        super().__init__(message)


class NumericalFailureError(SolverException):
    """Raised when the LP solver fails or its solution cannot be certified."""

    code = "NumericalFailure"

    def __init__(self, message: str = "Linear program solve failed"):
        super().__init__(message)


class DegenerateNormalizationError(SolverException):
    """Raised when a fairness row has coefficients but a zero normalizer."""

    code = "DegenerateNormalization"

    def __init__(self, message: str = "Zero normalizer for an in-scope fairness row"):
        super().__init__(message)


class UnknownMethodError(SolverException):
    """Raised when a scheduling method name is not recognized."""

    code = "UnknownMethod"

    def __init__(self, method: str):
        self.method = method
        super().__init__(f"Unknown scheduling method {method!r}")
