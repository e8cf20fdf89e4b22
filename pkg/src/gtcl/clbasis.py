"""Chari-Loktev monomials and basis vectors in Gelfand-Tsetlin coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .gtrep import GtVector, MatrixUnit, OperatorSpec, act, highest_weight_vector
from .patterns import Pattern, shifted_row


def divided_power_apply(op: OperatorSpec, n: int, v: GtVector) -> GtVector:
    """Apply ``op**n / n!`` to ``v``."""
    if n < 0:
        raise ValueError(f"divided power exponent must be non-negative, got {n}")
    for _ in range(n):
        if not v:
            break
        v = act(op, v)
    return v if n < 2 else v / factorial(n)


def lowering_unit(i: int, j: int) -> MatrixUnit:
    """The lowering matrix unit with its single 1 in position ``(j+1, i)``, ``1 <= i <= j``."""
    if not 1 <= i <= j:
        raise ValueError(f"need 1 <= i <= j, got i={i}, j={j}")
    return MatrixUnit(j + 1, i)


@dataclass(frozen=True)
class ClMonomial:
    """Ordered product of divided powers of lowering matrix units.

    ``row_factors[j - 1]`` holds the factors of row ``j`` as
    ``(MatrixUnit, exponent)`` pairs.  The full monomial is the product of the
    rows in order 1, 2, ..., r, so row ``r`` acts on a vector first.  Inside
    a row the factors commute.
    """

    row_factors: tuple[tuple[tuple[MatrixUnit, int], ...], ...]

    @property
    def degree(self) -> int:
        return sum(n for row in self.row_factors for _, n in row)

    def is_identity(self) -> bool:
        return self.degree == 0

    def apply(self, v: GtVector) -> GtVector:
        for row in reversed(self.row_factors):
            for op, n in reversed(row):
                if n:
                    v = divided_power_apply(op, n, v)
        return v

    def __str__(self):
        groups = []
        for row in self.row_factors:
            factors = [f"(x-[{op.col},{op.row - 1}])^({n})" for op, n in row if n]
            if factors:
                groups.append(" ".join(factors))
        return " · ".join(groups) if groups else "1"


def cl_monomial(p: Pattern) -> ClMonomial:
    rows = []
    for j in range(1, p.rank + 1):
        upper, lower = shifted_row(p, j), shifted_row(p, j + 1)
        rows.append(tuple((lowering_unit(i, j), lower[i - 1] - upper[i - 1]) for i in range(1, j + 1)))
    return ClMonomial(tuple(rows))


@lru_cache(maxsize=1 << 16)
def cl_vector(p: Pattern) -> GtVector:
    """The Chari-Loktev basis vector of ``p``, expanded in the GT basis."""
    return cl_monomial(p).apply(highest_weight_vector(p.bounding))


def cl_coefficients(p: Pattern) -> dict[Pattern, Fraction]:
    return cl_vector(p).terms
