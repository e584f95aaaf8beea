# fairconf/models/lp.py
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """
    maximize c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  bounds.

    Variables are the n x l assignment entries X[t, s] (row-major, index
    t * l + s) followed by u_lo, u_hi, v_lo, v_hi.
    """

    n_talks: int
    n_slots: int
    objective: np.ndarray
    a_ub: csr_matrix
    b_ub: np.ndarray
    a_eq: csr_matrix
    b_eq: np.ndarray
    bounds: Tuple[Tuple[Optional[float], Optional[float]], ...]
    row_names: Tuple[str, ...] = field(default=())

    @property
    def n_assignment_vars(self) -> int:
        return self.n_talks * self.n_slots

    @property
    def n_variables(self) -> int:
        return self.n_assignment_vars + 4

    @property
    def n_constraints(self) -> int:
        return self.a_ub.shape[0] + self.a_eq.shape[0]

    @property
    def aux_index(self) -> Dict[str, int]:
        base = self.n_assignment_vars
        return {"u_lo": base, "u_hi": base + 1, "v_lo": base + 2, "v_hi": base + 3}

    def variable_names(self) -> List[str]:
        names = [f"x_{t}_{s}" for t in range(self.n_talks) for s in range(self.n_slots)]
        return names + list(self.aux_index)

    def to_lp_text(self) -> str:
        """
        CPLEX LP rendering, readable by HiGHS, GLPK and CBC.

        Ax <= b rows come first, then the equality rows, with the names in
        row_names (inequalities followed by equalities).
        """
        names = self.variable_names()
        lines = ["\\ fairconf joint scheduling program", "Maximize", " obj: " + _linear(self.objective, names)]

        lines.append("Subject To")
        n_ub = self.a_ub.shape[0]
        for matrix, rhs, relation, offset in (
                (self.a_ub, self.b_ub, "<=", 0),
                (self.a_eq, self.b_eq, "=", n_ub)
        ):
            for row in range(matrix.shape[0]):
                coefficients = matrix.getrow(row).toarray().ravel()
                name = self.row_names[offset + row] if self.row_names else f"r{offset + row}"
                lines.append(f" {name}: {_linear(coefficients, names)} {relation} {_num(rhs[row])}")

        lines.append("Bounds")
        for name, (lower, upper) in zip(names, self.bounds):
            if lower is None and upper is None:
                lines.append(f" {name} free")
            elif lower is not None and lower == upper:
                lines.append(f" {name} = {_num(lower)}")
            else:
                low = "-inf" if lower is None else _num(lower)
                high = "+inf" if upper is None else _num(upper)
                lines.append(f" {low} <= {name} <= {high}")
        lines.append("End")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, eq=False)
class LPSolution:
    """Fractional solution of a LinearProgram."""

    x: np.ndarray
    u_lo: float
    u_hi: float
    v_lo: float
    v_hi: float
    objective_value: float
    status: str
    iterations: int = 0
    duality_gap: Optional[float] = None


def _num(value: float) -> str:
    return f"{float(value):.17g}"


def _linear(coefficients: np.ndarray, names: List[str]) -> str:
    terms = []
    for value, name in zip(coefficients, names):
        if value == 0:
            continue
        sign = "-" if value < 0 else "+"
        terms.append(f"{sign} {_num(abs(value))} {name}")
    if not terms:
        return "0 " + names[0]
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text
