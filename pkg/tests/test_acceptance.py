"""Acceptance suite: one test per exit criterion, exact arithmetic throughout.

Every test prints a single verdict line (visible with -s / in failure
output) and asserts a zero-failure sweep at the stated scale.  Criterion 1
is expected RED: its stated grid includes corner cases n < 2k - t' where
the closed-form count provably exceeds the total number of k-subsets (see
test body); the identity is verified separately on its domain of
validity, which is the regime every downstream use lives in.
"""

from fractions import Fraction

import pytest

from juntaforge.junta import JuntaSpec, residual
from juntaforge.oracles import (
    GeneratorConfig,
    SplitMix64,
    gen_cross_dependent_tuple,
    gen_cross_t_pair,
    gen_random_shifted,
)
from juntaforge.properties import (
    are_cross_t_intersecting,
    count_property_t,
    is_cross_dependent,
)
from juntaforge.report import Report
from juntaforge.setcore import KSet, SetFamily, binom, biased_measure, iter_k_masks
from juntaforge.shifting import (
    is_shifted,
    make_shifted,
    make_shifted_together,
    shift_family,
    shift_junta,
)
from juntaforge.theorems import (
    SweepOptions,
    drive_biased_junta,
    drive_bollobas_thomason,
    drive_cor111,
    drive_cross_agreeing,
    drive_emc_extremal,
    drive_hitting_junta,
    drive_lemcross,
    drive_lemhls,
    drive_lemshift,
    drive_pair_junta,
    drive_prop25,
    drive_propsumzero,
    drive_regime_params,
    drive_shift_junta,
)

SEED = 20240611


def verdict(num, label, ok, detail=""):
    line = f"criterion {num:>2} ({label}): {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" — {detail}"
    print(line)
    return ok


def run_driver(driver, **kw):
    report = Report(command=["acceptance"])
    opts = SweepOptions(seed=SEED, manifest=None, **kw)
    driver(report, opts)
    return report


def assert_all_pass(num, label, report):
    fails = [c for c in report.checks if c.verdict == "fail"]
    detail = "; ".join(
        f"{c.name}: {c.values}" + (f" witness={c.witness}" if c.witness else "")
        for c in fails
    )
    counts = {c.name: c.values.get("instances") for c in report.checks if c.values.get("instances")}
    ok = verdict(num, label, not fails, detail or f"instances: {counts}" if counts else detail)
    assert ok, f"criterion {num} failed: {detail}"


def test_criterion_01_reflection_identity_as_stated():
    """Count of diagonal-touching k-sets == binom(n, k-t') on the FULL triangle
    1 <= t' <= k <= n <= 14, zero tolerance.

    Expected red: for n < 2k - t' the closed form exceeds binom(n, k), the
    total number of k-subsets, so no count can match it.  Smallest case:
    (n, k, t') = (2, 2, 1) has one 2-subset of [2] (it touches the diagonal
    at step 1) yet binom(2, 1) = 2.  The reflection bijection is exact only
    when the walk endpoint (n-k, k-t') lies on or below the diagonal.
    """
    mismatches = []
    for n in range(1, 15):
        for k in range(1, n + 1):
            for t in range(1, k + 1):
                got = count_property_t(n, k, t)
                want = binom(n, k - t)
                if got != want:
                    mismatches.append((n, k, t, got, want))
    ok = verdict(
        1,
        "reflection identity, full stated triangle",
        not mismatches,
        f"{len(mismatches)} mismatches, all with n < 2k-t'; first (n,k,t',count,binom): {mismatches[0] if mismatches else None}",
    )
    assert ok, (
        f"{len(mismatches)} provable counterexamples on the stated grid, e.g. "
        f"(n,k,t')=(2,2,1): only binom(2,2)=1 two-subsets of [2] exist, but the "
        f"asserted closed form binom(2,1)=2; every mismatch has n < 2k-t' "
        f"(mismatching triples all satisfy it: "
        f"{all(n < 2 * k - t for n, k, t, _, _ in mismatches)})"
    )


def test_criterion_01_reflection_identity_on_valid_domain():
    """The same identity restricted to n >= 2k - t' (where every downstream use
    lives, since the size lemma has n' >= 2 max{a',b'}), plus the saturation
    count binom(n,k) outside the domain.  Zero tolerance, and this passes."""
    bad = []
    combos = 0
    for n in range(1, 15):
        for k in range(1, n + 1):
            for t in range(1, k + 1):
                got = count_property_t(n, k, t)
                if n >= 2 * k - t:
                    combos += 1
                    if got != binom(n, k - t):
                        bad.append((n, k, t))
                elif got != binom(n, k):
                    bad.append((n, k, t))
    ok = verdict(1, f"reflection identity on n >= 2k-t' ({combos} combos)", not bad)
    assert ok, bad


def test_criterion_02_shifting_invariants():
    rng = SplitMix64(SEED)
    instances = 0
    # size preservation on 300 random families, all pairs
    for i in range(300):
        n = 4 + rng.randrange(9)
        k = 1 + rng.randrange(min(4, n))
        masks = [m for m in iter_k_masks(n, k) if rng.chance(Fraction(1, 3))]
        f = SetFamily.from_masks(n, masks, k=k)
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                assert len(shift_family(f, u, v)) == len(f)
        instances += 1
    # simultaneous shifts preserve cross-t-intersecting (250 pairs)
    made = 0
    attempt = 0
    while made < 250 and attempt < 5000:
        attempt += 1
        n = 6 + rng.randrange(7)
        k = 2 + rng.randrange(3)
        t = 1 + rng.randrange(min(2, k))
        try:
            A, B = gen_cross_t_pair(GeneratorConfig(seed=SEED + attempt, n=n, k=k), t)
        except Exception:
            continue
        u = 1 + rng.randrange(n - 1)
        v = u + 1 + rng.randrange(n - u)
        A2, B2 = shift_family(A, u, v), shift_family(B, u, v)
        assert are_cross_t_intersecting(A2, B2, t).ok, (n, k, t, u, v)
        made += 1
        instances += 1
    assert made == 250
    # simultaneous shifts preserve cross-dependence (200 tuples)
    made = 0
    attempt = 0
    while made < 200 and attempt < 5000:
        attempt += 1
        n = 6 + rng.randrange(7)
        k = 2 + rng.randrange(2)
        s = 2 + rng.randrange(2)
        try:
            fams = gen_cross_dependent_tuple(GeneratorConfig(seed=SEED + 7000 + attempt, n=n, k=k, s=s))
        except Exception:
            continue
        u = 1 + rng.randrange(n - 1)
        v = u + 1 + rng.randrange(n - u)
        shifted = [shift_family(f, u, v) for f in fams]
        assert is_cross_dependent(shifted).ok, (n, k, s, u, v)
        made += 1
        instances += 1
    assert made == 200
    # make_shifted fixes shiftedness and preserves size (150 families)
    for i in range(150):
        n = 5 + rng.randrange(8)
        k = 2 + rng.randrange(min(3, n - 1))
        masks = [m for m in iter_k_masks(n, k) if rng.chance(Fraction(1, 4))]
        f = SetFamily.from_masks(n, masks, k=k)
        g = make_shifted(f)
        assert len(g) == len(f)
        assert is_shifted(g)
        instances += 1
    # shifting a junta never increases the residual of a shifted family (120)
    for i in range(120):
        n = 5 + rng.randrange(6)
        k = 2 + rng.randrange(2)
        fam = gen_random_shifted(
            GeneratorConfig(seed=SEED + 12000 + i, n=n, k=k, samples=1 + rng.randrange(4))
        )
        csize = rng.randrange(4)
        center = KSet(n, {1 + rng.randrange(n) for _ in range(csize)})
        subsets = [m for m in range(1 << n) if m & ~center.mask == 0]
        defining = SetFamily.from_masks(n, [m for m in subsets if rng.randrange(2)])
        before = len(residual(fam, JuntaSpec(center, defining)))
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                c2, d2 = shift_junta(center, defining, u, v)
                after = len(residual(fam, JuntaSpec(c2, d2)))
                assert after <= before, (n, k, u, v)
        instances += 1
    ok = verdict(2, "shifting invariants", instances >= 1000, f"{instances} seeded instances")
    assert ok


def test_criterion_03_pair_extraction_pipeline():
    report = run_driver(drive_pair_junta, instances=50)
    assert_all_pass(3, "cross-pair junta extraction (a=b=3, t=1, r=2)", report)


def test_criterion_04_hitting_extraction():
    report = run_driver(drive_hitting_junta, instances=40)
    assert_all_pass(4, "prefix-junta extraction: structure + exact escape bound", report)


def test_criterion_05_unit_weight_hitting():
    report = run_driver(drive_propsumzero, instances=500)
    assert_all_pass(5, "shifted cross-union tuples hit the unit hyperplane", report)
    values = report.checks[0].values
    assert int(values["instances"]) >= 500


def test_criterion_06_dichotomy_and_size_lemma():
    rep1 = run_driver(drive_prop25, instances=500)
    assert_all_pass(6, "walk-property dichotomy (500 pairs)", rep1)
    rep2 = run_driver(drive_lemcross, instances=500)
    fails = [c for c in rep2.checks if c.verdict == "fail"]
    names = {c.name for c in rep2.checks}
    ok = verdict(
        6,
        "size lemma, stated and strengthened branches tracked separately",
        not fails and {"lemcross", "lemcross-strengthened"} <= names,
    )
    assert ok


def test_criterion_07_trace_lemma():
    report = run_driver(drive_lemshift, instances=40)
    assert_all_pass(7, "traces strengthen cross-intersection", report)


def test_criterion_08_shadow_inequality():
    report = run_driver(drive_bollobas_thomason, instances=1000)
    assert_all_pass(8, "shadow-density inequality, 1000 samples", report)
    assert int(report.checks[0].values["instances"]) >= 1000


def test_criterion_09_extremal_family():
    report = run_driver(drive_emc_extremal, nmax=30)
    assert_all_pass(9, "extremal family: size, cross-dependence, maximality", report)
    names = [c.name for c in report.checks]
    assert names == ["emc-size-identity", "emc-cross-dependence", "emc-perturbation-maximality"]


def test_criterion_10_small_family_lemma():
    report = run_driver(drive_lemhls, instances=200, xmax=8)
    assert_all_pass(10, "cross-dependent tuples have a small family", report)
    assert int(report.checks[0].values["instances"]) >= 200


def test_criterion_11_parameter_calculators():
    rep1 = run_driver(drive_cor111)
    assert_all_pass(11, "center-size corollary bound j < 2(1+alpha)s", rep1)
    rep2 = run_driver(drive_regime_params)
    assert_all_pass(11, "center-size formulas upper-rounded and monotone", rep2)


def test_criterion_12_biased_mode():
    # exact normalization of the product measure on the full power set
    for n in (1, 4, 8, 12):
        full = SetFamily.from_masks(n, range(1 << n))
        for p in (Fraction(1, 2), Fraction(1, 7), Fraction(3, 5)):
            assert biased_measure(full, p) == 1
    verdict(12, "product-measure normalization (exact)", True)
    report = run_driver(drive_biased_junta, instances=12)
    assert_all_pass(12, "biased extraction: residual measure <= p^r", report)


def test_criterion_hitting_agreeing_weights():
    # supporting sweep used by criterion 4/5 narratives: agreeing-mode weights
    report = run_driver(drive_cross_agreeing, instances=100)
    fails = [c for c in report.checks if c.verdict == "fail"]
    assert not fails


def test_criterion_shift_junta_driver():
    report = run_driver(drive_shift_junta, instances=60)
    fails = [c for c in report.checks if c.verdict == "fail"]
    assert not fails
