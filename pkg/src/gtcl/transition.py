"""Chari-Loktev to Gelfand-Tsetlin transition matrices and their checks.

Rows of a transition matrix are CL vectors, columns are GT coordinates, both
indexed by the same canonical (greater-first) pattern order, so a matrix that
is triangular for row-wise dominance comes out lower-triangular.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm, prod

from .clbasis import cl_vector
from .gtrep import GtVector, MatrixUnit, act, parse_rational
from .patterns import (
    BoundingTuple,
    Pattern,
    PatternError,
    WeightTuple,
    dominates,
    enumerate_patterns,
    length,
    parse_pattern,
    patterns_of_weight,
    shifted_entry,
)

ZERO = Fraction(0)


class EmptyBlockError(ValueError):
    """A weight filter that no pattern realizes."""


def _fmt(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class TransitionMatrix:
    bounding: BoundingTuple
    order: tuple[Pattern, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.order)

    def index(self, p: Pattern) -> int:
        return self.order.index(p)

    def coefficient(self, row: Pattern, col: Pattern) -> Fraction:
        """Coefficient of the GT vector of ``col`` in the CL vector of ``row``."""
        return self.entries[self.index(row)][self.index(col)]

    def diagonal(self) -> list[Fraction]:
        return [self.entries[s][s] for s in range(self.size)]

    def nonzero(self):
        for s, row in enumerate(self.entries):
            for t, c in enumerate(row):
                if c:
                    yield s, t, c

    def with_entry(self, s: int, t: int, value) -> TransitionMatrix:
        """Copy with one entry replaced (fault injection in tests)."""
        rows = [list(r) for r in self.entries]
        rows[s][t] = Fraction(value)
        return TransitionMatrix(self.bounding, self.order, tuple(map(tuple, rows)))

    def to_json(self) -> dict:
        return {
            "bounding": list(self.bounding.entries),
            "order": [str(p) for p in self.order],
            "entries": [[_fmt(c) for c in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> TransitionMatrix:
        if isinstance(obj, str):
            obj = json.loads(obj)
        bounding = BoundingTuple(tuple(obj["bounding"]))
        order = tuple(parse_pattern(s, bounding) for s in obj["order"])
        entries = tuple(tuple(parse_rational(c) for c in row) for row in obj["entries"])
        if any(len(row) != len(order) for row in entries) or len(entries) != len(order):
            raise ValueError("transition matrix JSON is not square")
        return cls(bounding, order, entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(p) for p in self.order])
        for p, row in zip(self.order, self.entries):
            w.writerow([str(p)] + [_fmt(c) for c in row])
        return buf.getvalue()

    def to_text(self) -> str:
        labels = [str(p) for p in self.order]
        cells = [[_fmt_short(c) for c in row] for row in self.entries]
        lw = max(map(len, labels))
        cw = max([len(c) for row in cells for c in row] + [1])
        lines = [f"{self.size}x{self.size} transition matrix, bounding ({self.bounding})"]
        for label, row in zip(labels, cells):
            lines.append(label.rjust(lw) + " | " + " ".join(c.rjust(cw) for c in row))
        return "\n".join(lines)


def _fmt_short(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _row(p: Pattern) -> dict[Pattern, Fraction]:
    return cl_vector(p).terms


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("GTCL_THREADS", "1")))
    except ValueError:
        return 1


def select_patterns(bounding: BoundingTuple, weight_filter: WeightTuple | None = None) -> tuple[Pattern, ...]:
    if weight_filter is None:
        return enumerate_patterns(bounding)
    order = patterns_of_weight(bounding, weight_filter)
    if not order:
        raise EmptyBlockError(f"no pattern with bounding ({bounding}) has weight {weight_filter}")
    return order


def transition_matrix(
    bounding: BoundingTuple,
    weight_filter: WeightTuple | None = None,
    workers: int | None = None,
) -> TransitionMatrix:
    """Assemble the transition matrix, optionally for a single weight block.

    ``workers`` defaults to the ``GTCL_THREADS`` environment variable; rows are
    computed in worker processes when it exceeds 1.
    """
    order = select_patterns(bounding, weight_filter)
    workers = _workers() if workers is None else workers
    if workers > 1 and len(order) > 64:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, order, chunksize=max(1, len(order) // (4 * workers))))
    else:
        rows = [_row(p) for p in order]
    position = {p: t for t, p in enumerate(order)}
    entries = []
    for p, terms in zip(order, rows):
        dense = [ZERO] * len(order)
        for q, c in terms.items():
            if q not in position:
                raise AssertionError(f"CL vector of {p} leaves its weight space at {q}")
            dense[position[q]] = c
        entries.append(tuple(dense))
    return TransitionMatrix(bounding, order, tuple(entries))


@dataclass
class Report:
    """Outcome of one verification check."""

    name: str
    passed: bool
    checked: int = 0
    violations: list[dict] = field(default_factory=list)
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "detail": self.detail,
            "violations": self.violations,
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: {self.checked} checked, {len(self.violations)} violations{extra}"


def check_triangular(m: TransitionMatrix) -> Report:
    """Every nonzero coefficient must sit at a dominating column pattern."""
    violations = []
    checked = 0
    for s, t, c in m.nonzero():
        checked += 1
        if not dominates(m.order[t], m.order[s]):
            violations.append({"cl": str(m.order[s]), "gt": str(m.order[t]), "coeff": _fmt(c)})
    return Report("triangular", not violations, checked, violations)


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    if n < 0:
        raise AssertionError(f"negative factorial argument {n}")
    return 1 if n < 2 else n * _factorial(n - 1)


def diagonal_predicted(p: Pattern) -> Fraction:
    """Closed-form diagonal entry of the transition matrix at ``p``."""
    n = p.rank + 1
    ell = shifted_entry
    num = den = 1
    for j in range(2, n + 1):
        for i in range(1, j):
            for q in range(i, j):
                num *= _factorial(ell(p, j - 1, i) - ell(p, j - 1, q))
                den *= _factorial(ell(p, j, i) - ell(p, j - 1, q))
    return Fraction(num, den)


def check_diagonal(m: TransitionMatrix) -> Report:
    violations = []
    for s, p in enumerate(m.order):
        got, want = m.entries[s][s], diagonal_predicted(p)
        if got != want or got <= 0:
            violations.append({"pattern": str(p), "computed": _fmt(got), "predicted": _fmt(want)})
    return Report("diagonal", not violations, m.size, violations)


# -- induction step of the triangularity proof --------------------------------

def discrepancy_indices(p: Pattern) -> tuple[int, int]:
    """``(i0, j0)``: the first row ``j0`` that differs from the row above in
    some common position, and the first such position ``i0``."""
    rows = p.rows
    for j in range(2, len(rows) + 1):
        for i in range(1, j):
            if rows[j - 1][i - 1] != rows[j - 2][i - 1]:
                return i, j
    raise PatternError(f"{p} has length 0; no discrepancy")


def incremented_pattern(p: Pattern) -> Pattern:
    """Raise position ``i0`` by one on rows ``i0 .. j0-1``."""
    i0, j0 = discrepancy_indices(p)
    rows = [list(r) for r in p.rows]
    for j in range(i0, j0):
        rows[j - 1][i0 - 1] += 1
    return Pattern(tuple(map(tuple, rows)))


def interpolating_patterns(p: Pattern) -> list[Pattern]:
    """Patterns for k = i0..j0 taking rows 1..k-1 from ``p`` and the rest
    from the incremented pattern."""
    i0, j0 = discrepancy_indices(p)
    tp = incremented_pattern(p)
    return [Pattern(p.rows[: k - 1] + tp.rows[k - 1:]) for k in range(i0, j0 + 1)]


def lemma_coefficient_oracle(p: Pattern) -> Fraction:
    """Closed form for the coefficient of ``p`` in ``E(j0,i0)`` applied to
    the GT vector of the incremented pattern."""
    if length(p) == 0:
        raise PatternError(f"{p} has length 0")
    i0, j0 = discrepancy_indices(p)
    top = shifted_entry(p, j0 - 1, i0)
    den = prod(top - shifted_entry(p, j0 - 1, q) + 1 for q in range(i0 + 1, j0))
    return Fraction(1, den)


def recursion_scale(p: Pattern) -> Fraction:
    """``1 / (l(j0, i0) - l(j0-1, i0))`` for the recursion step."""
    i0, j0 = discrepancy_indices(p)
    return Fraction(1, shifted_entry(p, j0, i0) - shifted_entry(p, j0 - 1, i0))


def recursion_vector(p: Pattern) -> GtVector:
    """CL vector of ``p`` rebuilt from the CL vector of the incremented pattern."""
    i0, j0 = discrepancy_indices(p)
    return recursion_scale(p) * act(MatrixUnit(j0, i0), cl_vector(incremented_pattern(p)))


# -- determinants -------------------------------------------------------------

def determinant(m: TransitionMatrix) -> Fraction:
    """Product of the diagonal; valid once ``check_triangular`` has passed."""
    return prod(m.diagonal(), start=Fraction(1))


def bareiss_determinant(rows) -> Fraction:
    """Exact determinant by fraction-free elimination.

    Rational rows are first scaled to integers by the lcm of their denominators.
    """
    a = [list(map(Fraction, r)) for r in rows]
    n = len(a)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    ints = []
    for r in a:
        d = lcm(*(c.denominator for c in r))
        scale *= d
        ints.append([int(c * d) for c in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if ints[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if ints[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            ints[k], ints[swap] = ints[swap], ints[k]
            sign = -sign
        pivot = ints[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                ints[i][j] = (ints[i][j] * pivot - ints[i][k] * ints[k][j]) // prev
            ints[i][k] = 0
        prev = pivot
    return Fraction(sign * ints[n - 1][n - 1]) / scale
