import json
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from juntaforge.setcore import (
    MAX_UNIVERSE,
    FamilyFormatError,
    KSet,
    ResourceLimitError,
    SetFamily,
    binom,
    biased_measure,
    content_hash,
    enumerate_k_subsets,
    family_from_json,
    family_to_json,
    full_level,
    parse_family,
    prefix_count,
    serialize_family,
    trace,
)


def fam(n, sets, k=None):
    return SetFamily(n, sets, k=k)


class TestKSet:
    def test_basic(self):
        s = KSet(5, [2, 5])
        assert len(s) == 2
        assert s.elements() == (2, 5)
        assert 2 in s and 5 in s and 3 not in s
        assert s.mask == 0b10010

    def test_cached_cardinality_matches_popcount(self):
        for mask in range(64):
            s = KSet.from_mask(6, mask)
            assert s.card == bin(mask).count("1")

    def test_out_of_range_element(self):
        with pytest.raises(ValueError):
            KSet(3, [4])
        with pytest.raises(ValueError):
            KSet(3, [0])

    def test_universe_cap(self):
        with pytest.raises(ResourceLimitError):
            KSet(MAX_UNIVERSE + 1, [1])
        KSet(MAX_UNIVERSE, [MAX_UNIVERSE])  # just inside the cap

    def test_immutable(self):
        s = KSet(3, [1])
        with pytest.raises(AttributeError):
            s.mask = 7

    def test_set_algebra(self):
        a = KSet(6, [1, 2, 4])
        b = KSet(6, [2, 4, 6])
        assert (a & b).elements() == (2, 4)
        assert (a | b).elements() == (1, 2, 4, 6)
        assert (a - b).elements() == (1,)
        assert a.intersection_size(b) == 2
        assert not a.isdisjoint(b)
        assert KSet(6, [3]).isdisjoint(a)

    def test_universe_mismatch(self):
        with pytest.raises(ValueError):
            KSet(3, [1]) & KSet(4, [1])


class TestBinom:
    def test_spec_values(self):
        assert binom(6, 2) == 15
        assert binom(5, 0) == 1
        assert binom(4, 5) == 0
        assert binom(4, -1) == 0

    def test_negative_n(self):
        with pytest.raises(ValueError):
            binom(-1, 0)

    def test_pascal_rule_exact(self):
        for n in range(1, 65):
            for k in range(1, n + 1):
                assert binom(n, k) == binom(n - 1, k - 1) + binom(n - 1, k)

    def test_row_sums(self):
        for n in range(41):
            assert sum(binom(n, k) for k in range(n + 1)) == 2**n


class TestPrefixCount:
    def test_spec_values(self):
        assert prefix_count(KSet(5, [2, 5]), 3) == 1
        assert prefix_count(KSet(5, [2, 5]), 0) == 0
        assert prefix_count(KSet(3, [1, 2, 3]), 3) == 3

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            prefix_count(KSet(3, [1]), 4)
        with pytest.raises(ValueError):
            prefix_count(KSet(3, [1]), -1)


class TestTrace:
    def test_hand_enumeration(self):
        f = fam(4, [[1, 2], [1, 3], [2, 3]], k=2)
        out = trace(f, KSet(4, [1]), KSet(4, [1, 2]))
        # only {1,3} meets {1,2} exactly in {1}
        assert out == fam(4, [[3]], k=1)

    def test_identity_case(self):
        f = fam(4, [[1, 2], [3, 4]], k=2)
        assert trace(f, KSet(4), KSet(4)) == f

    def test_second_hand_case(self):
        f = fam(3, [[1, 2]], k=2)
        out = trace(f, KSet(3, [2]), KSet(3, [2, 3]))
        assert out == fam(3, [[1]], k=1)

    def test_x_not_subset_of_s(self):
        f = fam(3, [[1, 2]])
        with pytest.raises(ValueError):
            trace(f, KSet(3, [1]), KSet(3, [2]))

    def test_partition_property(self):
        # for fixed S, the traces over all X subseteq S partition the family
        f = full_level(6, 3)
        S = KSet(6, [2, 4, 5])
        total = 0
        for r in range(4):
            for xs in combinations([2, 4, 5], r):
                total += len(trace(f, KSet(6, xs), S))
        assert total == len(f)


class TestBiasedMeasure:
    def test_single_empty_set(self):
        f = fam(2, [[]])
        assert biased_measure(f, Fraction(1, 2)) == Fraction(1, 4)

    def test_normalization_on_power_set(self):
        for n in (1, 3, 6):
            f = SetFamily.from_masks(n, range(1 << n))
            for p in (Fraction(1, 2), Fraction(1, 3), Fraction(5, 7)):
                assert biased_measure(f, p) == 1

    def test_two_singletons(self):
        f = fam(2, [[1], [2]])
        assert biased_measure(f, Fraction(1, 3)) == Fraction(4, 9)

    def test_additivity_over_disjoint_split(self):
        f = full_level(5, 2)
        left = SetFamily.from_masks(5, f.masks[:4], k=2)
        right = SetFamily.from_masks(5, f.masks[4:], k=2)
        p = Fraction(2, 7)
        assert biased_measure(left, p) + biased_measure(right, p) == biased_measure(f, p)

    def test_bias_range(self):
        f = fam(2, [[1]])
        for bad in (Fraction(0), Fraction(1), Fraction(3, 2)):
            with pytest.raises(ValueError):
                biased_measure(f, bad)


class TestEnumerate:
    def test_small_case_order(self):
        out = [s.elements() for s in enumerate_k_subsets(3, 2)]
        assert out == [(1, 2), (1, 3), (2, 3)]

    def test_k_zero(self):
        out = list(enumerate_k_subsets(3, 0))
        assert len(out) == 1 and out[0].mask == 0

    def test_counts_match_binom(self):
        for n in range(1, 10):
            for k in range(n + 1):
                out = list(enumerate_k_subsets(n, k))
                assert len(out) == binom(n, k)
                assert len({s.mask for s in out}) == len(out)
                assert [s.mask for s in out] == sorted(s.mask for s in out)

    def test_cap(self):
        with pytest.raises(ResourceLimitError):
            list(enumerate_k_subsets(MAX_UNIVERSE + 1, 1))


class TestFamily:
    def test_canonical_order_and_dedup(self):
        f = SetFamily(3, [[2, 3], [1, 2], [2, 3]])
        assert [m.elements() for m in f.members] == [(1, 2), (2, 3)]

    def test_uniformity_enforced(self):
        with pytest.raises(ValueError):
            SetFamily(3, [[1, 2], [3]], k=2)

    def test_membership(self):
        f = fam(4, [[1, 2], [3, 4]])
        assert KSet(4, [1, 2]) in f
        assert KSet(4, [1, 3]) not in f


class TestFormats:
    def test_parse_basic(self):
        f = parse_family("n=3 k=2\n1 2\n2 3\n")
        assert f == fam(3, [[1, 2], [2, 3]], k=2)

    def test_comments_and_blanks(self):
        f = parse_family("# header comment\n\nn=3 k=*\n1 2  # a pair\n\n3\n")
        assert f == fam(3, [[1, 2], [3]])

    def test_round_trip_text(self):
        f = full_level(5, 2)
        assert parse_family(serialize_family(f)) == f
        g = fam(6, [[1], [2, 4, 6], []])
        assert parse_family(serialize_family(g)) == g

    def test_round_trip_json(self):
        f = fam(5, [[1, 3], [2, 5]], k=2)
        assert family_from_json(json.loads(json.dumps(family_to_json(f)))) == f

    def test_element_out_of_range_line_number(self):
        with pytest.raises(FamilyFormatError) as ei:
            parse_family("n=3 k=*\n1 2\n7\n")
        assert ei.value.line == 3

    def test_malformed_header(self):
        with pytest.raises(FamilyFormatError) as ei:
            parse_family("n=3\n1 2\n")
        assert ei.value.line == 1

    def test_duplicate_set(self):
        with pytest.raises(FamilyFormatError) as ei:
            parse_family("n=3 k=2\n1 2\n1 2\n")
        assert ei.value.line == 3

    def test_non_increasing_elements(self):
        with pytest.raises(FamilyFormatError):
            parse_family("n=3 k=2\n2 1\n")

    def test_uniformity_mismatch(self):
        with pytest.raises(FamilyFormatError) as ei:
            parse_family("n=4 k=2\n1 2 3\n")
        assert ei.value.line == 2

    def test_json_validation(self):
        with pytest.raises(FamilyFormatError):
            family_from_json({"n": 3, "k": 2, "sets": [[1, 7]]})
        with pytest.raises(FamilyFormatError):
            family_from_json({"n": 3})

    def test_content_hash_stable(self):
        f = fam(4, [[1, 2], [3, 4]], k=2)
        g = fam(4, [[3, 4], [1, 2]], k=2)
        assert content_hash(f) == content_hash(g)
        assert content_hash(f) != content_hash(fam(4, [[1, 2]], k=2))


@given(
    n=st.integers(min_value=1, max_value=8),
    data=st.data(),
)
@settings(max_examples=60, deadline=None)
def test_round_trip_random_families(n, data):
    masks = data.draw(st.lists(st.integers(min_value=0, max_value=(1 << n) - 1), max_size=12))
    f = SetFamily.from_masks(n, masks)
    assert parse_family(serialize_family(f)) == f
    assert family_from_json(family_to_json(f)) == f
