"""The irreducible module on the Gelfand-Tsetlin basis.

Vectors are sparse exact-rational combinations of basis vectors indexed by
patterns.  Simple generators act through the explicit Gelfand-Tsetlin
formulas; every other matrix unit is a nested commutator of simple ones.
Operators compose rightmost-first.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .patterns import (
    BoundingTuple,
    Pattern,
    PatternError,
    apply_delta,
    highest_pattern,
    parse_pattern,
    weight,
)


class OperatorError(ValueError):
    """Malformed or out-of-range operator."""


@dataclass(frozen=True, slots=True)
class MatrixUnit:
    """``E(row, col)`` with ``row != col``; 1-based."""

    row: int
    col: int

    def __post_init__(self):
        if self.row == self.col:
            raise OperatorError(f"E({self.row},{self.col}) is diagonal; use CartanDiff")
        if self.row < 1 or self.col < 1:
            raise OperatorError(f"E({self.row},{self.col}): indices start at 1")

    @property
    def is_lowering(self) -> bool:
        return self.row > self.col

    def __str__(self):
        return f"E,{self.row},{self.col}"


@dataclass(frozen=True, slots=True)
class CartanDiff:
    """``E(k,k) - E(k+1,k+1)``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise OperatorError(f"H({self.k}): index starts at 1")

    def __str__(self):
        return f"H,{self.k}"


OperatorSpec = Union[MatrixUnit, CartanDiff]


def parse_operator(text: str) -> OperatorSpec:
    """Parse ``"E,a,b"`` or ``"H,k"``."""
    parts = [s.strip() for s in text.split(",")]
    try:
        if parts[0].upper() == "E" and len(parts) == 3:
            return MatrixUnit(int(parts[1]), int(parts[2]))
        if parts[0].upper() == "H" and len(parts) == 2:
            return CartanDiff(int(parts[1]))
    except ValueError:
        pass
    raise OperatorError(f"cannot parse operator {text!r}; expected 'E,a,b' or 'H,k'")


def _check_op(op: OperatorSpec, rank: int):
    if isinstance(op, MatrixUnit):
        if op.row > rank + 1 or op.col > rank + 1:
            raise OperatorError(f"E({op.row},{op.col}) out of range for sl({rank + 1})")
    elif isinstance(op, CartanDiff):
        if op.k > rank:
            raise OperatorError(f"H({op.k}) out of range for sl({rank + 1})")
    else:
        raise OperatorError(f"not an operator: {op!r}")


def _coeff_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


class GtVector:
    """Sparse exact-rational vector on the Gelfand-Tsetlin basis.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("bounding", "_terms")

    def __init__(self, bounding: BoundingTuple, terms: Mapping[Pattern, Fraction] | Iterable = ()):
        self.bounding = bounding
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Pattern, Fraction] = {}
        for p, c in items:
            if p.rows[-1] != bounding.entries:
                raise PatternError(f"{p} does not have bounding sequence {bounding}")
            acc[p] = acc.get(p, 0) + Fraction(c)
        self._terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def _from_dict(cls, bounding: BoundingTuple, terms: dict) -> GtVector:
        v = object.__new__(cls)
        v.bounding = bounding
        v._terms = {p: c for p, c in terms.items() if c}
        return v

    @classmethod
    def zero(cls, bounding: BoundingTuple) -> GtVector:
        return cls._from_dict(bounding, {})

    @classmethod
    def basis(cls, p: Pattern) -> GtVector:
        return cls._from_dict(p.bounding, {p: Fraction(1)})

    @property
    def terms(self) -> Mapping[Pattern, Fraction]:
        return dict(self._terms)

    def coefficient(self, p: Pattern) -> Fraction:
        return self._terms.get(p, Fraction(0))

    def support(self) -> list[Pattern]:
        return sorted(self._terms, key=Pattern.sort_key, reverse=True)

    def items(self) -> Iterator[tuple[Pattern, Fraction]]:
        for p in self.support():
            yield p, self._terms[p]

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check_compatible(self, other: GtVector):
        if not isinstance(other, GtVector):
            return NotImplemented
        if other.bounding != self.bounding:
            raise PatternError(f"vectors live in different modules: {self.bounding} vs {other.bounding}")

    def __add__(self, other: GtVector) -> GtVector:
        self._check_compatible(other)
        acc = dict(self._terms)
        for p, c in other._terms.items():
            acc[p] = acc.get(p, 0) + c
        return GtVector._from_dict(self.bounding, acc)

    def __sub__(self, other: GtVector) -> GtVector:
        return self + (-other)

    def __neg__(self) -> GtVector:
        return GtVector._from_dict(self.bounding, {p: -c for p, c in self._terms.items()})

    def __mul__(self, scalar) -> GtVector:
        if isinstance(scalar, GtVector):
            return NotImplemented
        s = Fraction(scalar)
        return GtVector._from_dict(self.bounding, {p: s * c for p, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> GtVector:
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, GtVector):
            return NotImplemented
        return self.bounding == other.bounding and self._terms == other._terms

    def __hash__(self):
        return hash((self.bounding, frozenset(self._terms.items())))

    def __repr__(self):
        return f"GtVector({self.bounding}, {self.to_text(include_bounding=True)})"

    def to_text(self, include_bounding: bool = False) -> str:
        """Human rendering such as ``1/3·(3;3,2) − 1/3·(3;4,1)``."""
        if not self._terms:
            return "0"
        out = []
        for n, (p, c) in enumerate(self.items()):
            rows = p.rows if include_bounding else p.rows[:-1]
            label = "(" + ";".join(",".join(map(str, r)) for r in rows) + ")"
            mag = abs(c)
            body = f"{mag.numerator}" if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
            if n == 0:
                out.append(("−" if c < 0 else "") + f"{body}·{label}")
            else:
                out.append((" − " if c < 0 else " + ") + f"{body}·{label}")
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "bounding": list(self.bounding.entries),
            "terms": [{"pattern": str(p), "coeff": _coeff_str(c)} for p, c in self.items()],
        }

    @classmethod
    def from_json(cls, obj: dict | str) -> GtVector:
        if isinstance(obj, str):
            obj = json.loads(obj)
        bounding = BoundingTuple(tuple(obj["bounding"]))
        terms = [(parse_pattern(t["pattern"], bounding), parse_rational(t["coeff"])) for t in obj["terms"]]
        return cls(bounding, terms)


def highest_weight_vector(bounding: BoundingTuple) -> GtVector:
    return GtVector.basis(highest_pattern(bounding))


# -- basis-level action -------------------------------------------------------

def _shifted(rows, k):
    # shifted entries of row k (1-based)
    return [x - i for i, x in enumerate(rows[k - 1])]


@lru_cache(maxsize=1 << 18)
def _cartan_basis(k: int, p: Pattern) -> Fraction:
    mu = weight(p).coords
    return Fraction(mu[k - 1] - mu[k])


@lru_cache(maxsize=1 << 18)
def _raise_basis(k: int, p: Pattern) -> tuple[tuple[Pattern, Fraction], ...]:
    rows = p.rows
    lk = _shifted(rows, k)
    lk1 = _shifted(rows, k + 1)
    out = []
    for i in range(1, k + 1):
        target = apply_delta(p, k, i, +1)
        if target is None:
            continue
        li = lk[i - 1]
        num = 1
        for x in lk1:
            num *= li - x
        if num == 0:
            continue
        den = 1
        for q, x in enumerate(lk, start=1):
            if q != i:
                den *= li - x
        assert den != 0, "shifted entries must be strictly decreasing"
        out.append((target, Fraction(-num, den)))
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _lower_basis(k: int, p: Pattern) -> tuple[tuple[Pattern, Fraction], ...]:
    rows = p.rows
    lk = _shifted(rows, k)
    lkm = _shifted(rows, k - 1) if k > 1 else []
    out = []
    for i in range(1, k + 1):
        target = apply_delta(p, k, i, -1)
        if target is None:
            continue
        li = lk[i - 1]
        num = 1
        for x in lkm:
            num *= li - x
        if num == 0:
            continue
        den = 1
        for q, x in enumerate(lk, start=1):
            if q != i:
                den *= li - x
        assert den != 0, "shifted entries must be strictly decreasing"
        out.append((target, Fraction(num, den)))
    return tuple(out)


def _apply_basis_map(fn, v: dict) -> dict:
    acc: dict = defaultdict(Fraction)
    for p, c in v.items():
        for q, d in fn(p):
            acc[q] += c * d
    return acc


@lru_cache(maxsize=1 << 18)
def _unit_basis(a: int, b: int, p: Pattern) -> tuple[tuple[Pattern, Fraction], ...]:
    """Action of E(a, b) on a single basis vector."""
    if a == b + 1:
        return _lower_basis(b, p)
    if b == a + 1:
        return _raise_basis(a, p)
    if a > b:
        # E(a,b) = [E(a,a-1), E(a-1,b)]
        x, y = (a, a - 1), (a - 1, b)
    else:
        # transpose of the lowering bracket: E(a,b) = [E(a,b-1), E(b-1,b)]
        x, y = (a, b - 1), (b - 1, b)

    def fx(q):
        return _unit_basis(x[0], x[1], q)

    def fy(q):
        return _unit_basis(y[0], y[1], q)

    start = {p: Fraction(1)}
    xy = _apply_basis_map(fx, _apply_basis_map(fy, start))
    yx = _apply_basis_map(fy, _apply_basis_map(fx, start))
    for q, c in yx.items():
        xy[q] -= c
    return tuple(sorted(((q, c) for q, c in xy.items() if c), key=lambda t: t[0].sort_key(), reverse=True))


def _act_terms(fn, v: GtVector) -> GtVector:
    return GtVector._from_dict(v.bounding, _apply_basis_map(fn, v._terms))


def act_cartan(k: int, v: GtVector) -> GtVector:
    """``(E(k,k) - E(k+1,k+1)) v``; diagonal in the pattern basis."""
    if not 1 <= k <= v.bounding.rank:
        raise OperatorError(f"H({k}) out of range")
    return GtVector._from_dict(v.bounding, {p: c * _cartan_basis(k, p) for p, c in v._terms.items()})


def act_raise(k: int, v: GtVector) -> GtVector:
    """``E(k, k+1) v``."""
    if not 1 <= k <= v.bounding.rank:
        raise OperatorError(f"E({k},{k + 1}) out of range for sl({v.bounding.rank + 1})")
    return _act_terms(lambda p: _raise_basis(k, p), v)


def act_lower(k: int, v: GtVector) -> GtVector:
    """``E(k+1, k) v``."""
    if not 1 <= k <= v.bounding.rank:
        raise OperatorError(f"E({k + 1},{k}) out of range for sl({v.bounding.rank + 1})")
    return _act_terms(lambda p: _lower_basis(k, p), v)


def act(op: OperatorSpec, v: GtVector) -> GtVector:
    _check_op(op, v.bounding.rank)
    if isinstance(op, CartanDiff):
        return act_cartan(op.k, v)
    a, b = op.row, op.col
    return _act_terms(lambda p: _unit_basis(a, b, p), v)


def commutator(x: OperatorSpec, y: OperatorSpec, v: GtVector) -> GtVector:
    """``[x, y] v = x(y v) - y(x v)``."""
    return act(x, act(y, v)) - act(y, act(x, v))


def act_diagonal_difference(a: int, b: int, v: GtVector) -> GtVector:
    """``(E(a,a) - E(b,b)) v`` written as a signed sum of Cartan differences."""
    if a == b:
        return GtVector.zero(v.bounding)
    lo, hi = min(a, b), max(a, b)
    total = GtVector.zero(v.bounding)
    for k in range(lo, hi):
        total = total + act_cartan(k, v)
    return total if a < b else -total


def clear_caches():
    for fn in (_cartan_basis, _raise_basis, _lower_basis, _unit_basis):
        fn.cache_clear()
