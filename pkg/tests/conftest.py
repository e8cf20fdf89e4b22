from itertools import product

import pytest
from hypothesis import strategies as st

from gtcl.patterns import BoundingTuple, Pattern, dominates, is_valid_pattern

# r <= 3, every module small enough for exhaustive checks
SMALL = [
    (1, 0), (2, 0), (5, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0), (4, 2, 0), (3, 3, 0),
    (3, 0, -2), (1, 0, 0, 0), (1, 1, 0, 0), (2, 1, 0, 0), (2, 1, 1, 0), (3, 2, 1, 0),
]


def brute_force_patterns(bounding: BoundingTuple) -> set[Pattern]:
    """Every filling of the triangle from the box [min, max] that is a pattern."""
    lam = bounding.entries
    n = len(lam)
    lo, hi = lam[-1], lam[0]
    cells = n * (n - 1) // 2
    found = set()
    for values in product(range(lo, hi + 1), repeat=cells):
        rows, at = [], 0
        for j in range(1, n):
            rows.append(tuple(values[at:at + j]))
            at += j
        rows.append(lam)
        if is_valid_pattern(rows, bounding):
            found.add(Pattern(tuple(rows)))
    return found


def kahn_greater_first(patterns) -> list[Pattern]:
    """Linear extension of dominance: repeatedly emit the lexicographically
    greatest pattern all of whose strict dominators are already emitted."""
    remaining = list(patterns)
    above = {p: {q for q in remaining if q != p and dominates(q, p)} for p in remaining}
    out, done = [], set()
    while remaining:
        ready = [p for p in remaining if above[p] <= done]
        best = max(ready, key=lambda p: p.sort_key())
        out.append(best)
        done.add(best)
        remaining.remove(best)
    return out


@st.composite
def boundings(draw, max_rank=3, max_gap=3):
    rank = draw(st.integers(1, max_rank))
    gaps = draw(st.lists(st.integers(0, max_gap), min_size=rank, max_size=rank))
    last = draw(st.integers(-4, 4))
    entries = [last]
    for g in reversed(gaps):
        entries.insert(0, entries[0] + g)
    return BoundingTuple(tuple(entries))


@pytest.fixture(params=SMALL, ids=lambda b: ",".join(map(str, b)))
def small_bounding(request):
    return BoundingTuple(request.param)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
