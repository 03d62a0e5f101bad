"""Exact two-phase simplex over the rationals with Bland's rule.

Decision variables are free (unrestricted in sign); every bound must be
written as an explicit constraint by the caller.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionMismatch

RELATIONS = ("<=", ">=", "=", "<", ">")


@dataclass(frozen=True)
class Constraint:
    covector: tuple
    relation: str
    rhs: Fraction


@dataclass
class LinearSystem:
    dim: int
    constraints: list = field(default_factory=list)

    def add(self, covector, relation, rhs=0):
        covector = tuple(Fraction(c) for c in covector)
        if len(covector) != self.dim:
            raise DimensionMismatch(f"covector of length {len(covector)} in dimension {self.dim}")
        if relation not in RELATIONS:
            raise ValueError(f"unknown relation {relation!r}")
        self.constraints.append(Constraint(covector, relation, Fraction(rhs)))
        return self

    def satisfied_by(self, x) -> bool:
        for c in self.constraints:
            lhs = sum((a * v for a, v in zip(c.covector, x)), Fraction(0))
            ok = {
                "<=": lhs <= c.rhs,
                ">=": lhs >= c.rhs,
                "=": lhs == c.rhs,
                "<": lhs < c.rhs,
                ">": lhs > c.rhs,
            }[c.relation]
            if not ok:
                return False
        return True


@dataclass(frozen=True)
class LPOutcome:
    status: str
    value: Fraction = None
    witness: tuple = None


def _simplex(tableau, basis, cost, nvars):
    """Maximise cost . z over the tableau rows (A | b) with z >= 0.

    ``basis`` lists the basic column of each row and is updated in place.
    Returns 'optimal' or 'unbounded'.
    """
    m = len(tableau)
    while True:
        # reduced costs c_j - c_B B^-1 A_j, tableau already in canonical form
        entering = None
        for j in range(nvars):
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * tableau[i][j] for i in range(m))
            if rc > 0:
                entering = j
                break
        if entering is None:
            return "optimal"
        leaving = None
        best = None
        for i in range(m):
            a = tableau[i][entering]
            if a > 0:
                ratio = tableau[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            return "unbounded"
        _pivot(tableau, leaving, entering)
        basis[leaving] = entering


def _pivot(tableau, row, col):
    p = tableau[row][col]
    prow = [v / p for v in tableau[row]]
    tableau[row] = prow
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, prow)]


def maximize(objective, system: LinearSystem) -> LPOutcome:
    """Maximise objective . x subject to a system of non-strict constraints."""
    n = system.dim
    objective = tuple(Fraction(c) for c in objective)
    if len(objective) != n:
        raise DimensionMismatch("objective has the wrong length")
    if any(c.relation in ("<", ">") for c in system.constraints):
        raise ValueError("maximize accepts only <=, >= and = constraints")

    # columns: x+ (n), x- (n), one slack per inequality, one artificial per row
    ineq = [i for i, c in enumerate(system.constraints) if c.relation != "="]
    nslack = len(ineq)
    m = len(system.constraints)
    base = 2 * n + nslack
    total = base + m
    tableau = []
    slack_col = {row: 2 * n + k for k, row in enumerate(ineq)}
    for i, c in enumerate(system.constraints):
        row = [Fraction(0)] * (total + 1)
        for j, a in enumerate(c.covector):
            row[j] = a
            row[n + j] = -a
        if c.relation == "<=":
            row[slack_col[i]] = Fraction(1)
        elif c.relation == ">=":
            row[slack_col[i]] = Fraction(-1)
        row[-1] = c.rhs
        if row[-1] < 0:
            row = [-v for v in row]
        row[base + i] = Fraction(1)
        tableau.append(row)
    basis = [base + i for i in range(m)]

    # phase 1: maximise minus the sum of artificials
    cost1 = [Fraction(0)] * base + [Fraction(-1)] * m
    _simplex(tableau, basis, cost1, total)
    infeasibility = sum(tableau[i][-1] for i in range(m) if basis[i] >= base)
    if infeasibility != 0:
        return LPOutcome("infeasible")

    # drive remaining (zero-valued) artificials out of the basis
    keep = []
    for i in range(m):
        if basis[i] >= base:
            col = next((j for j in range(base) if tableau[i][j] != 0), None)
            if col is None:
                continue  # redundant row
            _pivot(tableau, i, col)
            basis[i] = col
        keep.append(i)
    tableau = [tableau[i][:base] + [tableau[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    cost2 = list(objective) + [-c for c in objective] + [Fraction(0)] * nslack
    status = _simplex(tableau, basis, cost2, base)
    if status == "unbounded":
        return LPOutcome("unbounded")
    z = [Fraction(0)] * base
    for i, b in enumerate(basis):
        z[b] = tableau[i][-1]
    x = tuple(z[j] - z[n + j] for j in range(n))
    value = sum((c * v for c, v in zip(objective, x)), Fraction(0))
    return LPOutcome("optimal", value, x)


def feasible_strict(system: LinearSystem):
    """A point satisfying every constraint at its stated strictness, or None.

    Each strict relation a.x > c becomes a.x >= c + t for one shared slack t,
    and t is maximised subject to t <= 1.
    """
    strict = any(c.relation in ("<", ">") for c in system.constraints)
    if not strict:
        out = maximize([0] * system.dim, system)
        return out.witness if out.status == "optimal" else None
    n = system.dim
    lifted = LinearSystem(n + 1)
    for c in system.constraints:
        cov = list(c.covector)
        if c.relation == ">":
            lifted.add(cov + [-1], ">=", c.rhs)
        elif c.relation == "<":
            lifted.add(cov + [1], "<=", c.rhs)
        else:
            lifted.add(cov + [0], c.relation, c.rhs)
    lifted.add([0] * n + [1], "<=", 1)
    out = maximize([0] * n + [1], lifted)
    if out.status != "optimal" or out.value <= 0:
        return None
    return out.witness[:n]
