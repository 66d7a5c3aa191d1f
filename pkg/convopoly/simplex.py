"""
Exact two-phase simplex over the rationals with Bland's rule.

Solves  minimize c.x  subject to  A x = b, x >= 0  with Fraction
arithmetic throughout. Bland's rule (smallest eligible index for both the
entering and the leaving variable) rules out cycling.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidArgumentError, InvariantViolationError

logger = logging.getLogger(__name__)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgramResult:
    status: str
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


class SimplexTableau:
    """Dense tableau kept in canonical form with respect to its basis."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, i: int, j: int) -> None:
        row = self.rows[i]
        piv = row[j]
        self.rows[i] = [a / piv for a in row]
        self.rhs[i] /= piv
        row = self.rows[i]
        for k in range(len(self.rows)):
            if k == i:
                continue
            f = self.rows[k][j]
            if f:
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], row)]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], columns: range) -> dict[int, Fraction]:
        duals = [cost[b] for b in self.basis]
        return {
            j: cost[j] - sum(y * row[j] for y, row in zip(duals, self.rows) if y)
            for j in columns
        }

    def objective(self, cost: Sequence[Fraction]) -> Fraction:
        return sum((cost[b] * v for b, v in zip(self.basis, self.rhs)), Fraction(0))

    def run(self, cost: Sequence[Fraction], columns: range) -> str:
        """Minimize cost over the current feasible basis."""
        while True:
            reduced = self.reduced_costs(cost, columns)
            entering = next((j for j in columns if reduced[j] < 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    key = (self.rhs[i] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)

    def solution(self, n: int) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for b, v in zip(self.basis, self.rhs):
            if b < n:
                x[b] = v
        return tuple(x)


def solve_standard_form(
    cost: Sequence, rows: Sequence[Sequence], rhs: Sequence
) -> LinearProgramResult:
    """
    Solve minimize cost.x subject to rows x = rhs, x >= 0.

    Args:
        cost: Objective coefficients, one per variable
        rows: Constraint matrix, one list per equality
        rhs: Right-hand sides

    Returns:
        LinearProgramResult with status, optimal value and a primal solution
    """
    n = len(cost)
    m = len(rows)
    if any(len(r) != n for r in rows) or len(rhs) != m:
        raise InvalidArgumentError("Constraint matrix does not match cost and rhs sizes")

    A = [[Fraction(a) for a in r] for r in rows]
    b = [Fraction(v) for v in rhs]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-a for a in A[i]]
            b[i] = -b[i]

    # Phase 1: artificial identity block in columns n .. n+m-1
    tableau = SimplexTableau(
        [A[i] + [Fraction(int(k == i)) for k in range(m)] for i in range(m)],
        b,
        [n + i for i in range(m)],
    )
    phase_one_cost = [Fraction(0)] * n + [Fraction(1)] * m
    tableau.run(phase_one_cost, range(n + m))
    if tableau.objective(phase_one_cost) > 0:
        return LinearProgramResult(INFEASIBLE)

    # Drive remaining artificials out of the basis; drop redundant rows
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            j = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if j is None:
                del tableau.rows[i]
                del tableau.rhs[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, j)
        i += 1
    tableau.rows = [r[:n] for r in tableau.rows]

    full_cost = [Fraction(c) for c in cost]
    status = tableau.run(full_cost, range(n))
    if status == UNBOUNDED:
        return LinearProgramResult(UNBOUNDED)
    x = tableau.solution(n)
    value = sum((c * v for c, v in zip(full_cost, x)), Fraction(0))
    if any(v < 0 for v in x):
        raise InvariantViolationError("Simplex produced a negative primal value")
    logger.debug(f"LP solved: {m} rows, {n} columns, {tableau.pivots} pivots")
    return LinearProgramResult(OPTIMAL, value, x)


def is_feasible(rows: Sequence[Sequence], rhs: Sequence) -> bool:
    """Whether rows x = rhs has a solution with x >= 0."""
    n = len(rows[0]) if rows else 0
    return solve_standard_form([0] * n, rows, rhs).feasible
