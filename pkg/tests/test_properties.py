from fractions import Fraction
from itertools import product

import pytest

from juntaforge.oracles import SplitMix64, emc_extremal, prefix_threshold_family, star_family
from juntaforge.properties import (
    HittingSystem,
    are_cross_t_intersecting,
    bollobas_thomason_check,
    check_cross_agreeing,
    check_cross_union,
    check_hitting,
    count_property_t,
    dichotomy_check,
    has_property_t,
    is_cross_dependent,
    lemcross_check,
    lemhls_check,
    upper_shadow,
)
from juntaforge.setcore import (
    KSet,
    SetFamily,
    binom,
    enumerate_k_subsets,
    full_level,
    prefix_count,
)


def fam(n, sets, k=None):
    return SetFamily(n, sets, k=k)


# ---------------------------------------------------------------------------
# Naive reference searches (independent of the pruned implementations)
# ---------------------------------------------------------------------------


def naive_rainbow(families):
    for combo in product(*[f.masks for f in families]):
        union = 0
        ok = True
        for m in combo:
            if m & union:
                ok = False
                break
            union |= m
        if ok:
            return combo
    return None


def naive_union_violation(families, q):
    bound = sum(f.k for f in families) - q
    for combo in product(*[f.masks for f in families]):
        union = 0
        for m in combo:
            union |= m
        if union.bit_count() > bound:
            return combo
    return None


def naive_agree_violation(families, t):
    n = families[0].n
    for combo in product(*[f.masks for f in families]):
        inter = (1 << n) - 1
        for m in combo:
            inter &= m
        if inter.bit_count() < t:
            return combo
    return None


def naive_hitting_violation(system, families):
    n = families[0].n
    levels = system.levels or tuple(range(1, n + 1))
    for combo in product(*[f.members for f in families]):
        if not any(
            sum(a * prefix_count(F, l) for a, F in zip(system.alphas, combo)) >= l + system.q
            for l in levels
        ):
            return tuple(F.mask for F in combo)
    return None


def random_family(rng, n, k, density=Fraction(1, 2)):
    from juntaforge.setcore import enumerate_k_subsets

    masks = [s.mask for s in enumerate_k_subsets(n, k) if rng.chance(density)]
    return SetFamily.from_masks(n, masks, k=k)


class TestCrossIntersecting:
    def test_stars(self):
        a = star_family(5, 2)
        assert are_cross_t_intersecting(a, a, 1).ok

    def test_disjoint_witness(self):
        res = are_cross_t_intersecting(fam(4, [[1, 2]], k=2), fam(4, [[3, 4]], k=2), 1)
        assert not res.ok
        assert res.witness == (KSet(4, [1, 2]), KSet(4, [3, 4]))

    def test_majority_template_pigeonhole(self):
        f = prefix_threshold_family(5, 3, 3, 2)
        # oracle: exhaustive pair check
        assert all((a.mask & b.mask) for a in f for b in f)
        assert are_cross_t_intersecting(f, f, 1).ok

    def test_t_must_be_positive(self):
        with pytest.raises(ValueError):
            are_cross_t_intersecting(fam(3, [[1]]), fam(3, [[1]]), 0)


class TestCrossDependent:
    def test_identical_singletons(self):
        f = fam(4, [[1, 2]], k=2)
        assert is_cross_dependent([f, f]).ok

    def test_witness(self):
        res = is_cross_dependent([fam(4, [[1, 2], [3, 4]], k=2), fam(4, [[1, 2]], k=2)])
        assert not res.ok
        assert res.witness == (KSet(4, [3, 4]), KSet(4, [1, 2]))

    def test_emc_three_copies_oracle(self):
        f = emc_extremal(6, 2, 3)
        assert naive_rainbow([f, f, f]) is None
        assert is_cross_dependent([f, f, f]).ok

    def test_agrees_with_naive_on_random_instances(self):
        rng = SplitMix64(2024)
        for trial in range(60):
            n = 5 + rng.randrange(3)
            k = 2 + rng.randrange(2)
            s = 2 + rng.randrange(2)
            fams = [random_family(rng, n, k, Fraction(1, 3)) for _ in range(s)]
            if any(len(f) == 0 for f in fams):
                continue
            res = is_cross_dependent(fams)
            ref = naive_rainbow(fams)
            assert res.ok == (ref is None)
            if not res.ok:
                assert tuple(w.mask for w in res.witness) == ref


class TestCrossUnion:
    def test_overlapping_pair(self):
        assert check_cross_union([fam(4, [[1, 2]], k=2), fam(4, [[1, 3]], k=2)], 1).ok

    def test_disjoint_pair_fails(self):
        res = check_cross_union([fam(4, [[1, 2]], k=2), fam(4, [[3, 4]], k=2)], 1)
        assert not res.ok

    def test_q1_coincides_with_cross_dependence(self):
        rng = SplitMix64(7)
        for trial in range(50):
            n = 5 + rng.randrange(3)
            k = 2
            s = 2 + rng.randrange(2)
            fams = [random_family(rng, n, k, Fraction(1, 3)) for _ in range(s)]
            if any(len(f) == 0 for f in fams):
                continue
            assert check_cross_union(fams, 1).ok == is_cross_dependent(fams).ok

    def test_agrees_with_naive(self):
        rng = SplitMix64(99)
        for trial in range(40):
            n = 5 + rng.randrange(3)
            fams = [random_family(rng, n, 2, Fraction(1, 3)) for _ in range(2)]
            if any(len(f) == 0 for f in fams):
                continue
            for q in (1, 2):
                res = check_cross_union(fams, q)
                ref = naive_union_violation(fams, q)
                assert res.ok == (ref is None)
                if not res.ok:
                    # a returned witness always re-verifies naively
                    union = 0
                    for w in res.witness:
                        union |= w.mask
                    assert union.bit_count() > sum(f.k for f in fams) - q


class TestCrossAgreeing:
    def test_common_element(self):
        f = fam(4, [[1, 2], [1, 3]], k=2)
        assert check_cross_agreeing([f, f], 1).ok

    def test_failure(self):
        res = check_cross_agreeing([fam(4, [[1, 2]], k=2), fam(4, [[2, 3]], k=2)], 2)
        assert not res.ok
        assert res.witness == (KSet(4, [1, 2]), KSet(4, [2, 3]))

    def test_three_stars(self):
        f = star_family(5, 2)
        assert check_cross_agreeing([f, f, f], 1).ok

    def test_agrees_with_naive(self):
        rng = SplitMix64(31)
        for trial in range(40):
            n = 5 + rng.randrange(2)
            fams = [random_family(rng, n, 3, Fraction(1, 3)) for _ in range(2)]
            if any(len(f) == 0 for f in fams):
                continue
            for t in (1, 2):
                res = check_cross_agreeing(fams, t)
                ref = naive_agree_violation(fams, t)
                assert res.ok == (ref is None)
                if not res.ok:
                    assert tuple(w.mask for w in res.witness) == ref


class TestHitting:
    def test_trivial_singletons(self):
        sys2 = HittingSystem((Fraction(1), Fraction(1)), Fraction(1))
        f = fam(3, [[1]], k=1)
        assert check_hitting(sys2, [f, f]).ok

    def test_hand_negative(self):
        sys2 = HittingSystem((Fraction(1), Fraction(1)), Fraction(1), levels=(1, 2, 3, 4))
        f = fam(4, [[3, 4]], k=2)
        res = check_hitting(sys2, [f, f])
        assert not res.ok
        assert res.witness == (KSet(4, [3, 4]), KSet(4, [3, 4]))

    def test_rational_weights(self):
        # agreeing-mode weights for s=3: alpha_i = 1/2, q = t/2; stars share element 1
        sysr = HittingSystem((Fraction(1, 2),) * 3, Fraction(1, 2))
        f = star_family(5, 2)
        assert check_hitting(sysr, [f, f, f]).ok

    def test_agrees_with_naive(self):
        rng = SplitMix64(555)
        alphas_pool = [Fraction(1), Fraction(1, 2), Fraction(2), Fraction(2, 3)]
        q_pool = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2)]
        for trial in range(50):
            n = 4 + rng.randrange(3)
            s = 2 + rng.randrange(2)
            alphas = tuple(alphas_pool[rng.randrange(4)] for _ in range(s))
            q = q_pool[rng.randrange(4)]
            fams = [random_family(rng, n, 2, Fraction(1, 3)) for _ in range(s)]
            if any(len(f) == 0 for f in fams):
                continue
            system = HittingSystem(alphas, q)
            res = check_hitting(system, fams)
            ref = naive_hitting_violation(system, fams)
            assert res.ok == (ref is None), f"trial {trial}"
            if not res.ok:
                assert tuple(w.mask for w in res.witness) == ref

    def test_level_subset(self):
        # restricting the level set can flip the verdict
        f = fam(4, [[2, 3]], k=2)
        all_levels = HittingSystem((Fraction(1), Fraction(1)), Fraction(1))
        assert check_hitting(all_levels, [f, f]).ok  # l=3: 2+2 >= 4
        only_one = HittingSystem((Fraction(1), Fraction(1)), Fraction(1), levels=(1,))
        assert not check_hitting(only_one, [f, f]).ok

    def test_arity_mismatch(self):
        sys2 = HittingSystem((Fraction(1), Fraction(1)), Fraction(1))
        f = fam(3, [[1]], k=1)
        with pytest.raises(ValueError):
            check_hitting(sys2, [f, f, f])


class TestPropertyT:
    def test_hand_values(self):
        assert has_property_t(KSet(4, [1, 3]), 1)
        assert has_property_t(KSet(4, [2, 3]), 1)  # i=1: |F ^ [3]| = 2 >= 2
        assert not has_property_t(KSet(4, [2, 4]), 1)

    def test_count_small(self):
        assert count_property_t(4, 2, 1) == 4
        qualifying = {
            F.elements() for F in enumerate_k_subsets(4, 2) if has_property_t(F, 1)
        }
        assert qualifying == {(1, 2), (1, 3), (1, 4), (2, 3)}

    def test_count_forced(self):
        for n in (4, 6):
            for k in (2, 3):
                assert count_property_t(n, k, k) == 1

    def test_count_matches_reflection_formula(self):
        assert count_property_t(6, 3, 1) == binom(6, 2) == 15


class TestDichotomy:
    def test_star(self):
        f = star_family(5, 2)
        assert dichotomy_check(f, f, 1)

    def test_vacuous(self):
        assert dichotomy_check(fam(4, [], k=2), fam(4, [[2, 4]], k=2), 1)


class TestShadow:
    def test_small(self):
        out = upper_shadow(fam(4, [[1, 2]], k=2), 3)
        assert out == fam(4, [[1, 2, 3], [1, 2, 4]], k=3)

    def test_identity(self):
        g = fam(5, [[1, 3], [2, 4]], k=2)
        assert upper_shadow(g, 2) == g

    def test_empty(self):
        assert len(upper_shadow(fam(4, [], k=2), 3)) == 0

    def test_t_too_small(self):
        with pytest.raises(ValueError):
            upper_shadow(fam(4, [[1, 2, 3]], k=3), 2)

    def test_bt_hand_example(self):
        assert bollobas_thomason_check(fam(4, [[1, 2]], k=2), 3)
        # 2^2 * 6^1 = 24 >= 1^1 * 4^2 = 16, recomputed here
        shadow = upper_shadow(fam(4, [[1, 2]], k=2), 3)
        assert len(shadow) ** 2 * binom(4, 2) == 24
        assert 1 * binom(4, 3) ** 2 == 16

    def test_bt_full_level(self):
        f = full_level(5, 2)
        assert bollobas_thomason_check(f, 3)

    def test_bt_random_sample(self):
        rng = SplitMix64(77)
        for _ in range(100):
            n = 5 + rng.randrange(3)
            k = 2 + rng.randrange(2)
            f = random_family(rng, n, k, Fraction(1, 3))
            if len(f) == 0:
                continue
            t = k + rng.randrange(n - k + 1)
            assert bollobas_thomason_check(f, t)


class TestLemmas:
    def test_lemhls_hand_example(self):
        g = fam(4, [[1, 2], [1, 3], [1, 4]], k=2)
        assert is_cross_dependent([g, g]).ok  # all share element 1
        assert lemhls_check([g, g], [2, 2])

    def test_lemhls_empty_family(self):
        assert lemhls_check([fam(4, [], k=2), fam(4, [[1, 2]], k=2)], [2, 2])

    def test_lemcross_on_star_pair(self):
        a = star_family(8, 3)
        b = star_family(8, 4)
        assert are_cross_t_intersecting(a, b, 1).ok
        assert lemcross_check(a, b, 1)
