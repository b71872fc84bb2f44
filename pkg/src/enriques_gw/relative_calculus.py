"""Relative-invariant bookkeeping for degenerations along an elliptic
fiber: coefficient tables for the two relative-insertion patterns, the
triangular recursion those coefficients force on the unknown relative
invariants, and the split of the genus-2 degree-d invariant into its
two degeneration contributions.

The punchline of the recursion is structural: whatever rational `base`
value seeds the right-hand side, the unique solution is I_d = 2 * base
for every d.  solve_I_recursion computes the solution independently by
forward substitution so that tests can confirm the closed form rather
than assume it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Tuple

from .gw_engine import enriques_genus1
from .lattice import as_vector, enumerate_decompositions, is_positive, pair, square
from .qseries import sigma_pow


def p1_relative_coeff(kind: str, d: int, r: int = None) -> Fraction:
    """Coefficient of one relative insertion pattern in degree d.

    kind "full": the single maximal-contact pattern, 1/(2d)!.
    kind "mixed": the split pattern with contact orders d+r and d-r,
    1/((d+r)! (d-r)!), defined for 1 <= r <= d-1.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if kind == "full":
        if r is not None:
            raise ValueError("full pattern takes no split parameter")
        return Fraction(1, factorial(2 * d))
    if kind == "mixed":
        if r is None or not 1 <= r <= d - 1:
            raise ValueError("mixed pattern requires 1 <= r <= d-1")
        return Fraction(1, factorial(d + r) * factorial(d - r))
    raise ValueError("unknown pattern kind")


@dataclass
class RelativeCoefficientTable:
    """Materialized p1_relative_coeff values up to a degree bound."""

    d_max: int
    full: Dict[int, Fraction] = field(default_factory=dict)
    mixed: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    @classmethod
    def build(cls, d_max: int) -> "RelativeCoefficientTable":
        table = cls(d_max)
        for d in range(1, d_max + 1):
            table.full[d] = p1_relative_coeff("full", d)
            for r in range(1, d):
                table.mixed[(d, r)] = p1_relative_coeff("mixed", d, r)
        return table


def lemma_d5_value(d: int, base) -> Fraction:
    """Right-hand side of the degree-d relative relation: (2d/(d!)^2) * base."""
    if d < 1:
        raise ValueError("degree must be positive")
    return Fraction(2 * d, factorial(d) ** 2) * Fraction(base)


def solve_I_recursion(d_max: int, base) -> List[Fraction]:
    """Solve the triangular system

        I_d / (2d-1)! + sum_{r=1}^{d-1} 2r * I_r / ((d+r)! (d-r)!)
            = (2d/(d!)^2) * base

    for I_1..I_d_max by forward substitution.  Returns the list
    [I_1, ..., I_d_max]."""
    if d_max < 1:
        raise ValueError("degree bound must be positive")
    base = Fraction(base)
    solution: List[Fraction] = []
    for d in range(1, d_max + 1):
        rhs = lemma_d5_value(d, base)
        for r in range(1, d):
            rhs -= 2 * r * solution[r - 1] * p1_relative_coeff("mixed", d, r)
        solution.append(rhs * factorial(2 * d - 1))
    return solution


def lemma_d6_d7_prefactor(parity: str, m1: int, m2: int) -> Fraction:
    """Combinatorial prefactor of the two section-pattern families:
    odd pattern 2/((m1!)^2 (m2!)^2), even pattern 2*m1*m2/((m1!)^2 (m2!)^2).
    The even pattern needs both multiplicities positive."""
    if parity == "odd":
        if m1 < 0 or m2 < 0:
            raise ValueError("multiplicities must be nonnegative")
        return Fraction(2, factorial(m1) ** 2 * factorial(m2) ** 2)
    if parity == "even":
        if m1 < 1 or m2 < 1:
            raise ValueError("even pattern requires positive multiplicities")
        return Fraction(2 * m1 * m2, factorial(m1) ** 2 * factorial(m2) ** 2)
    raise ValueError("parity must be 'odd' or 'even'")


def genus2_contributions(beta, d: int) -> dict:
    """Split N_{2,(beta,d)} into its two degeneration contributions:

        type_i  = 4 * sigma_1(d) * <1>_beta * <beta,beta>
        type_ii = 16 * sigma_1(d) * sum <1>_b1 <1>_b2 <b1,b2>

    over ordered positive decompositions beta = b1 + b2.  Their sum is
    the full degree-d genus-2 invariant."""
    beta = as_vector(beta)
    if d < 1:
        raise ValueError("degree must be positive")
    if beta.is_zero() or not is_positive(beta):
        raise ValueError("split requires a nonzero positive class")
    sig = sigma_pow(1, d)
    type_i = 4 * sig * enriques_genus1(beta) * square(beta)
    cross = Fraction(0)
    for b1, b2 in enumerate_decompositions(beta):
        v1 = enriques_genus1(b1)
        if v1:
            v2 = enriques_genus1(b2)
            if v2:
                cross += v1 * v2 * pair(b1, b2)
    type_ii = 16 * sig * cross
    return {"type_i": type_i, "type_ii": type_ii}
