from itertools import permutations

import pytest
from hypothesis import given, settings

from gtcl.patterns import (
    BoundingTuple,
    Pattern,
    PatternError,
    WeightTuple,
    apply_delta,
    dominates,
    enumerate_patterns,
    format_pattern,
    highest_pattern,
    is_valid_pattern,
    length,
    parse_pattern,
    pattern_from_json,
    pattern_to_json,
    patterns_of_weight,
    shifted_entry,
    shifted_row,
    weight,
    weight_multiplicities,
    weyl_dimension,
)

from conftest import boundings, brute_force_patterns, kahn_greater_first

B420 = BoundingTuple((4, 2, 0))


def P(text, bounding=B420):
    return parse_pattern(text, bounding)


def rows(text):
    return [tuple(int(x) for x in r.split(",")) for r in text.split(";")]


class TestBoundingTuple:
    def test_rejects_increasing(self):
        with pytest.raises(PatternError):
            BoundingTuple((0, 1))

    def test_rejects_single_entry(self):
        with pytest.raises(PatternError):
            BoundingTuple((3,))

    def test_parse_and_normalize(self):
        b = BoundingTuple.parse("5,3,2")
        assert b.entries == (5, 3, 2)
        assert b.normalized().entries == (3, 1, 0)
        assert b.rank == 2


class TestValidity:
    def test_depicted_pattern(self):
        b = BoundingTuple((8, 6, 3, 1))
        assert is_valid_pattern(rows("4;5,4;7,5,2;8,6,3,1"), b)

    def test_missing_last_row(self):
        assert not is_valid_pattern(rows("2;1,1"), BoundingTuple((2, 1, 0)))

    def test_interlacing_violation(self):
        assert not is_valid_pattern(rows("2;5,1;4,2,0"), B420)

    def test_wrong_bounding(self):
        assert not is_valid_pattern(rows("2;3,1;4,2,0"), BoundingTuple((4, 2, 1)))

    def test_garbage_input(self):
        assert not is_valid_pattern(None, B420)
        assert not is_valid_pattern([(1.5,), (2, 1), (4, 2, 0)], B420)

    def test_constructor_validates(self):
        with pytest.raises(PatternError):
            Pattern(tuple(rows("2;5,1;4,2,0")))


class TestHighestPattern:
    def test_depicted(self):
        p = highest_pattern(BoundingTuple((8, 6, 3, 1)))
        assert str(p) == "8;8,6;8,6,3;8,6,3,1"

    def test_zero_weight(self):
        assert str(highest_pattern(BoundingTuple((0, 0)))) == "0;0,0"

    @pytest.mark.parametrize("lam", [(4, 2, 0), (3, 3, 0), (2, 1, 1, 0), (3, 0, -2)])
    def test_unique_of_highest_weight(self, lam):
        b = BoundingTuple(lam)
        hits = [p for p in brute_force_patterns(b) if weight(p).coords == lam]
        assert hits == [highest_pattern(b)]


class TestEnumeration:
    def test_sl2_fundamental(self):
        assert [str(p) for p in enumerate_patterns(BoundingTuple((1, 0)))] == ["1;1,0", "0;1,0"]

    def test_420_count(self):
        assert len(enumerate_patterns(B420)) == 27 == weyl_dimension((4, 2, 0))

    def test_weight_zero_block(self):
        block = patterns_of_weight(B420, WeightTuple((2, 2, 2)))
        assert [str(p) for p in block] == ["2;4,0;4,2,0", "2;3,1;4,2,0", "2;2,2;4,2,0"]
        assert patterns_of_weight(B420, WeightTuple((0, 0, 0))) == block

    def test_matches_brute_force(self, small_bounding):
        got = enumerate_patterns(small_bounding)
        assert len(set(got)) == len(got)
        assert set(got) == brute_force_patterns(small_bounding)

    def test_dimension_formula(self, small_bounding):
        assert len(enumerate_patterns(small_bounding)) == weyl_dimension(small_bounding)

    def test_order_is_greater_first_extension(self, small_bounding):
        got = list(enumerate_patterns(small_bounding))
        assert got == kahn_greater_first(got)

    def test_order_is_linear_extension(self, small_bounding):
        got = enumerate_patterns(small_bounding)
        for s, a in enumerate(got):
            for b in got[:s]:
                assert not (dominates(a, b) and a != b)


class TestWeightAndLength:
    def test_depicted_weight(self):
        p = parse_pattern("4;5,4;7,5,2;8,6,3,1")
        assert weight(p).coords == (4, 5, 5, 4)

    def test_highest_weight(self):
        assert weight(highest_pattern(B420)).coords == (4, 2, 0)

    def test_weight_class(self):
        w = weight(P("2;2,2"))
        assert w.coords == (2, 2, 2)
        assert w.equivalent(WeightTuple((0, 0, 0)))
        assert w.normalized().coords == (0, 0, 0)

    @pytest.mark.parametrize("text, expected", [("4;4,2", 0), ("2;2,2", 2), ("2;4,0", 4), ("2;3,1", 3)])
    def test_length(self, text, expected):
        assert length(P(text)) == expected

    def test_length_zero_only_for_highest(self, small_bounding):
        zeros = [p for p in enumerate_patterns(small_bounding) if length(p) == 0]
        assert zeros == [highest_pattern(small_bounding)]


class TestDominance:
    def test_example_chain(self):
        p1, p2, p3 = P("2;4,0"), P("2;3,1"), P("2;2,2")
        assert dominates(p1, p2) and dominates(p2, p3)
        assert not dominates(p3, p1)

    def test_incomparable(self):
        b = BoundingTuple((2, 1, 0))
        a, c = P("2;2,0", b), P("1;2,1", b)
        assert not dominates(a, c) and not dominates(c, a)

    def test_bounding_mismatch(self):
        with pytest.raises(PatternError):
            dominates(P("2;2,2"), highest_pattern(BoundingTuple((4, 2, 1))))

    def test_poset_laws(self, small_bounding):
        pats = enumerate_patterns(small_bounding)
        if len(pats) > 64:
            pytest.skip("cubic transitivity check kept to small modules")
        ge = {(a, b): dominates(a, b) for a in pats for b in pats}
        for a in pats:
            assert ge[a, a]
            for b in pats:
                if ge[a, b] and ge[b, a]:
                    assert a == b
                if ge[a, b]:
                    for c in pats:
                        if ge[b, c]:
                            assert ge[a, c]

    def test_highest_is_maximum(self, small_bounding):
        top = highest_pattern(small_bounding)
        assert all(dominates(top, p) for p in enumerate_patterns(small_bounding))


class TestDelta:
    def test_cannot_raise_highest(self):
        assert apply_delta(highest_pattern(B420), 1, 1, +1) is None

    def test_raise(self):
        assert apply_delta(P("2;2,2"), 2, 1, +1) == P("2;3,2")

    def test_lower(self):
        assert apply_delta(P("2;2,2"), 2, 2, -1) == P("2;2,1")

    @pytest.mark.parametrize("row, pos", [(3, 1), (0, 1), (2, 3), (1, 0)])
    def test_out_of_range(self, row, pos):
        with pytest.raises(PatternError):
            apply_delta(P("2;2,2"), row, pos, +1)

    def test_matches_full_validation(self, small_bounding):
        for p in enumerate_patterns(small_bounding):
            for k in range(1, small_bounding.rank + 1):
                for i in range(1, k + 1):
                    for sign in (1, -1):
                        r = [list(x) for x in p.rows]
                        r[k - 1][i - 1] += sign
                        expected = is_valid_pattern(r, small_bounding)
                        got = apply_delta(p, k, i, sign)
                        assert (got is not None) == expected
                        if got is not None:
                            assert [list(x) for x in got.rows] == r


class TestShiftedEntries:
    def test_examples(self):
        p = P("2;2,2")
        assert shifted_row(p, 2) == (2, 1)
        assert shifted_row(p, 3) == (4, 1, -2)
        assert shifted_row(P("2;4,0"), 2) == (4, -1)
        assert shifted_entry(p, 3, 3) == -2

    def test_first_position_unshifted(self, small_bounding):
        for p in enumerate_patterns(small_bounding):
            for j in range(1, len(p.rows) + 1):
                assert shifted_entry(p, j, 1) == p.rows[j - 1][0]

    def test_strictly_decreasing(self, small_bounding):
        for p in enumerate_patterns(small_bounding):
            for j in range(1, len(p.rows) + 1):
                row = shifted_row(p, j)
                assert all(a > b for a, b in zip(row, row[1:]))

    def test_out_of_range(self):
        with pytest.raises(PatternError):
            shifted_entry(P("2;2,2"), 2, 3)


class TestMultiplicities:
    def test_sl2(self):
        m = weight_multiplicities(BoundingTuple((1, 0)))
        assert m == {WeightTuple((1, 0)): 1, WeightTuple((0, 1)): 1}

    def test_zero_weight_420(self):
        assert weight_multiplicities(B420)[WeightTuple((2, 2, 2))] == 3

    def test_110(self):
        m = weight_multiplicities(BoundingTuple((1, 1, 0)))
        assert m == {WeightTuple(w): 1 for w in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]}

    def test_weyl_symmetry(self, small_bounding):
        m = weight_multiplicities(small_bounding)
        assert sum(m.values()) == weyl_dimension(small_bounding)
        for perm in permutations(range(len(small_bounding))):
            permuted = {WeightTuple(tuple(w.coords[i] for i in perm)).normalized(): c for w, c in m.items()}
            assert permuted == {w.normalized(): c for w, c in m.items()}


class TestEncoding:
    def test_text_roundtrip(self):
        p = P("2;3,1")
        assert str(p) == "2;3,1;4,2,0"
        assert format_pattern(p, include_bounding=False) == "2;3,1"
        assert parse_pattern(str(p)) == p

    def test_json_roundtrip(self):
        p = P("2;3,1")
        obj = pattern_to_json(p)
        assert obj == {"bounding": [4, 2, 0], "rows": [[2], [3, 1], [4, 2, 0]]}
        assert pattern_from_json(obj) == p

    def test_rank_zero_rejected(self):
        with pytest.raises(PatternError):
            parse_pattern("3")

    def test_bad_text(self):
        with pytest.raises(PatternError):
            parse_pattern("2;x,1;4,2,0")


@settings(max_examples=40, deadline=None)
@given(boundings())
def test_enumeration_matches_weyl(b):
    assert len(enumerate_patterns(b)) == weyl_dimension(b)


@settings(max_examples=25, deadline=None)
@given(boundings(max_rank=3, max_gap=2))
def test_shift_equivariance(b):
    for c in (-3, 5):
        shifted = enumerate_patterns(b.shifted(c))
        base = enumerate_patterns(b)
        assert shifted == tuple(p.shifted(c) for p in base)
        for p, q in zip(base[:10], shifted[:10]):
            assert length(p) == length(q)
            for p2, q2 in zip(base[:10], shifted[:10]):
                assert dominates(p, p2) == dominates(q, q2)
