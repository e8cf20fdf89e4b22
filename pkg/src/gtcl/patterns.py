"""Integral Gelfand-Tsetlin patterns with a fixed bounding sequence.

Rows are numbered from 1 (the single top entry) to ``r + 1`` (the bounding
row); positions inside a row are numbered from 1 as well.  Internally a
pattern is a tuple of integer tuples, ``rows[j - 1][i - 1]`` being the entry
in position ``i`` on row ``j``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, product
from typing import Iterable, Sequence


class PatternError(ValueError):
    """Malformed bounding tuple, pattern, or out-of-range row/position."""


@dataclass(frozen=True, slots=True)
class BoundingTuple:
    """A dominant integral weight as a non-increasing integer tuple."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if len(entries) < 2:
            raise PatternError("a bounding tuple needs at least two entries")
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in entries):
            raise PatternError(f"bounding entries must be integers: {entries!r}")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise PatternError(f"bounding tuple is not non-increasing: {entries!r}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def parse(cls, text: str) -> BoundingTuple:
        try:
            entries = tuple(int(x) for x in text.split(","))
        except ValueError:
            raise PatternError(f"cannot parse bounding tuple {text!r}") from None
        return cls(entries)

    @property
    def rank(self) -> int:
        """The ``r`` of sl(r+1)."""
        return len(self.entries) - 1

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def shifted(self, c: int) -> BoundingTuple:
        return BoundingTuple(tuple(x + c for x in self.entries))

    def normalized(self) -> BoundingTuple:
        """Representative of the same weight with last entry 0."""
        return self.shifted(-self.entries[-1])

    def __str__(self):
        return ",".join(map(str, self.entries))


@dataclass(frozen=True, slots=True)
class WeightTuple:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))

    @classmethod
    def parse(cls, text: str) -> WeightTuple:
        try:
            return cls(tuple(int(x) for x in text.split(",")))
        except ValueError:
            raise PatternError(f"cannot parse weight {text!r}") from None

    def normalized(self) -> WeightTuple:
        """Representative modulo the constant tuple with last coordinate 0."""
        last = self.coords[-1]
        return WeightTuple(tuple(x - last for x in self.coords))

    def equivalent(self, other: WeightTuple) -> bool:
        """Equality modulo the constant tuple (1, ..., 1)."""
        if len(self.coords) != len(other.coords):
            return False
        return self.normalized() == other.normalized()

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __str__(self):
        return "(" + ",".join(map(str, self.coords)) + ")"


def _interlaces(lower: Sequence[int], upper: Sequence[int]) -> bool:
    # lower has length n, upper has length n - 1
    return all(lower[i] >= upper[i] >= lower[i + 1] for i in range(len(upper)))


def is_valid_pattern(rows: Sequence[Sequence[int]], bounding: BoundingTuple) -> bool:
    """True iff ``rows`` is an integral pattern with bounding sequence ``bounding``."""
    try:
        rows = [tuple(row) for row in rows]
    except TypeError:
        return False
    n = len(bounding.entries)
    if len(rows) != n:
        return False
    for j, row in enumerate(rows, start=1):
        if len(row) != j:
            return False
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in row):
            return False
        if any(a < b for a, b in zip(row, row[1:])):
            return False
    if rows[-1] != bounding.entries:
        return False
    return all(_interlaces(rows[j], rows[j - 1]) for j in range(1, n))


@dataclass(frozen=True, slots=True, eq=True)
class Pattern:
    """An integral Gelfand-Tsetlin pattern, validated on construction."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.rows)
        if not rows:
            raise PatternError("empty pattern")
        bounding = BoundingTuple(rows[-1])
        if not is_valid_pattern(rows, bounding):
            raise PatternError(f"not a valid pattern: {_encode(rows)}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _trusted(cls, rows: tuple[tuple[int, ...], ...]) -> Pattern:
        # skips validation; callers guarantee a valid tuple-of-tuples
        p = object.__new__(cls)
        object.__setattr__(p, "rows", rows)
        return p

    @property
    def bounding(self) -> BoundingTuple:
        return BoundingTuple(self.rows[-1])

    @property
    def rank(self) -> int:
        return len(self.rows) - 1

    def entry(self, row: int, position: int) -> int:
        _check_position(self, row, position, last_row=True)
        return self.rows[row - 1][position - 1]

    def sort_key(self) -> tuple[int, ...]:
        """Concatenation of the rows, top first; larger keys come first."""
        return tuple(x for row in self.rows for x in row)

    def shifted(self, c: int) -> Pattern:
        return Pattern._trusted(tuple(tuple(x + c for x in row) for row in self.rows))

    def __str__(self):
        return _encode(self.rows)

    def __repr__(self):
        return f"Pattern({_encode(self.rows)!r})"


def _encode(rows) -> str:
    return ";".join(",".join(map(str, row)) for row in rows)


def format_pattern(p: Pattern, include_bounding: bool = True) -> str:
    rows = p.rows if include_bounding else p.rows[:-1]
    return _encode(rows)


def parse_pattern(text: str, bounding: BoundingTuple | None = None) -> Pattern:
    """Parse ``"2;3,1;4,2,0"``.

    With ``bounding`` given, the bounding row may be omitted from ``text``;
    if present it must agree.
    """
    try:
        rows = [tuple(int(x) for x in chunk.split(",")) for chunk in text.strip().split(";")]
    except ValueError:
        raise PatternError(f"cannot parse pattern {text!r}") from None
    if bounding is not None:
        if len(rows) == len(bounding.entries) - 1:
            rows.append(bounding.entries)
        if not is_valid_pattern(rows, bounding):
            raise PatternError(f"{text!r} is not a pattern with bounding sequence {bounding}")
    if len(rows) < 2:
        raise PatternError("patterns need at least two rows")
    return Pattern(tuple(rows))


def pattern_to_json(p: Pattern) -> dict:
    return {"bounding": list(p.rows[-1]), "rows": [list(row) for row in p.rows]}


def pattern_from_json(obj: dict | str) -> Pattern:
    if isinstance(obj, str):
        obj = json.loads(obj)
    bounding = BoundingTuple(tuple(obj["bounding"]))
    rows = [tuple(row) for row in obj["rows"]]
    if not is_valid_pattern(rows, bounding):
        raise PatternError(f"invalid pattern record: {obj!r}")
    return Pattern(tuple(rows))


def highest_pattern(bounding: BoundingTuple) -> Pattern:
    """The unique pattern whose weight is the bounding tuple itself."""
    lam = bounding.entries
    return Pattern._trusted(tuple(lam[:j] for j in range(1, len(lam) + 1)))


def _rows_above(row: tuple[int, ...]):
    ranges = [range(row[i + 1], row[i] + 1) for i in range(len(row) - 1)]
    return product(*ranges)


@lru_cache(maxsize=64)
def enumerate_patterns(bounding: BoundingTuple) -> tuple[Pattern, ...]:
    """All patterns with the given bounding sequence, in canonical order.

    Canonical order is descending in the concatenated rows.  This is a linear
    extension of row-wise dominance with greater patterns first: if ``a``
    strictly dominates ``b``, the first differing entry of the first
    differing row is larger in ``a``.
    """
    partial = [(bounding.entries,)]
    for _ in range(bounding.rank):
        partial = [(above,) + rows for rows in partial for above in _rows_above(rows[0])]
    found = [Pattern._trusted(rows) for rows in partial]
    found.sort(key=Pattern.sort_key, reverse=True)
    return tuple(found)


def patterns_of_weight(bounding: BoundingTuple, w: WeightTuple) -> tuple[Pattern, ...]:
    """Patterns whose weight is equivalent to ``w`` modulo the constant tuple."""
    target = w.normalized()
    if len(target) != len(bounding):
        raise PatternError(f"weight {w} has the wrong length for bounding {bounding}")
    return tuple(p for p in enumerate_patterns(bounding) if weight(p).normalized() == target)


def weight(p: Pattern) -> WeightTuple:
    sums = [0] + [sum(row) for row in p.rows]
    return WeightTuple(tuple(b - a for a, b in zip(sums, sums[1:])))


def length(p: Pattern) -> int:
    rows = p.rows
    return sum(
        rows[j][i] - rows[j - 1][i]
        for j in range(1, len(rows))
        for i in range(j)
    )


def dominates(a: Pattern, b: Pattern) -> bool:
    """Row-wise dominance ``a >= b``: every prefix sum of every row is at least as large."""
    if a.rows[-1] != b.rows[-1]:
        raise PatternError(f"patterns have different bounding tuples: {a} vs {b}")
    for ra, rb in zip(a.rows, b.rows):
        if ra == rb:
            continue
        for sa, sb in zip(accumulate(ra), accumulate(rb)):
            if sa < sb:
                return False
    return True


def _check_position(p: Pattern, row: int, position: int, last_row: bool):
    top = len(p.rows) if last_row else len(p.rows) - 1
    if not (1 <= row <= top and 1 <= position <= row):
        raise PatternError(f"(row, position) = ({row}, {position}) out of range for rank {p.rank}")


def apply_delta(p: Pattern, row: int, position: int, sign: int) -> Pattern | None:
    """Add ``sign`` (+1 or -1) to one entry above the bounding row.

    Returns None when the result is not a pattern.
    """
    _check_position(p, row, position, last_row=False)
    if sign not in (1, -1):
        raise PatternError(f"sign must be +1 or -1, got {sign!r}")
    rows = p.rows
    k, i = row - 1, position - 1
    value = rows[k][i] + sign
    below = rows[k + 1]
    if not (below[i] >= value >= below[i + 1]):
        return None
    if k > 0:
        above = rows[k - 1]
        if i < k and value < above[i]:
            return None
        if i > 0 and value > above[i - 1]:
            return None
    new_row = rows[k][:i] + (value,) + rows[k][i + 1:]
    return Pattern._trusted(rows[:k] + (new_row,) + rows[k + 1:])


def shifted_entry(p: Pattern, row: int, position: int) -> int:
    """``entry(row, position) - position + 1``; strictly decreasing along a row."""
    _check_position(p, row, position, last_row=True)
    return p.rows[row - 1][position - 1] - position + 1


def shifted_row(p: Pattern, row: int) -> tuple[int, ...]:
    return tuple(x - i for i, x in enumerate(p.rows[row - 1]))


def weight_multiplicities(bounding: BoundingTuple) -> dict[WeightTuple, int]:
    return dict(Counter(weight(p) for p in enumerate_patterns(bounding)))


def weyl_dimension(bounding: Iterable[int]) -> int:
    """Dimension of the irreducible module from the Weyl product formula."""
    lam = tuple(bounding)
    n = len(lam)
    d = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            d *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert d.denominator == 1
    return int(d)
