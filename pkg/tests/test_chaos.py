import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab.chaos import (
    DistributionProfile,
    build_scrambled_family,
    classify_pair,
    dc1_minimal_witness,
    diff_equal_densities,
    distribution_profile,
    family_pair_frequencies,
    family_pair_profile,
)
from shiftlab.core import periodic_point
from shiftlab.errors import AlphabetMismatch, PreconditionError
from shiftlab.sets import EVENS, FiniteSet, PeriodicSet, parse_set_expr


def P(pre, per):
    return periodic_point(pre, per)


# -- exact densities ----------------------------------------------------------

def test_diff_equal_basic():
    d, e = diff_equal_densities(P("", "10"), P("", "0"))
    assert (d, e) == (Fraction(1, 2), Fraction(1, 2))


def test_diff_equal_identity():
    x = P("1", "10")
    assert diff_equal_densities(x, x) == (0, 1)


def test_diff_equal_antipodal():
    assert diff_equal_densities(P("", "10"), P("", "01"))[0] == 1


def test_diff_equal_alphabet_mismatch():
    with pytest.raises(AlphabetMismatch):
        diff_equal_densities(P("", "10"), periodic_point("", "10", n=3))


def test_diff_equal_preperiod_ignored():
    # disagreements confined to the preperiod have density zero
    d, e = diff_equal_densities(P("111", "0"), P("", "0"))
    assert (d, e) == (0, 1)


# -- exact profiles -----------------------------------------------------------

def test_profile_step_function():
    prof = distribution_profile(P("", "10"), P("", "0"))
    assert prof.exact
    lookup = dict(zip(prof.thresholds, prof.F_values))
    assert lookup[Fraction(1, 8)] == 0
    assert lookup[Fraction(1, 4)] == 0
    assert lookup[Fraction(1, 2)] == Fraction(1, 2)
    assert lookup[Fraction(1)] == 1
    assert prof.F_values == prof.Fstar_values


def test_profile_identity_pair():
    prof = distribution_profile(P("", "10"), P("", "10"))
    assert prof.fstar_one_everywhere
    assert all(f == 1 for f, t in zip(prof.F_values, prof.thresholds) if t > 0)


def test_profile_asymptotic_pair():
    # differ only in the preperiod: distances drop to 0
    prof = distribution_profile(P("111", "0"), P("", "0"))
    assert prof.fstar_one_everywhere
    assert all(f == 1 for f in prof.F_values)


def test_profile_monotone_and_bounded():
    prof = distribution_profile(P("01", "110"), P("", "10"))
    assert list(prof.F_values) == sorted(prof.F_values)
    assert all(0 <= f <= 1 for f in prof.F_values)
    assert all(f <= fs for f, fs in zip(prof.F_values, prof.Fstar_values))


def test_profile_mixed_pair_rejected():
    with pytest.raises(PreconditionError):
        distribution_profile(P("", "10"), (0, 1, 0))


def test_profile_json():
    j = distribution_profile(P("", "10"), P("", "0")).to_json()
    assert j["exact"] is True
    assert {"t": "2^-1", "F": "1/2", "Fstar": "1/2"} in j["grid"]


# -- classification -----------------------------------------------------------

def test_classify_exact_pairs_none():
    for x, y in [(P("", "10"), P("", "0")), (P("", "1"), P("", "1"))]:
        assert classify_pair(distribution_profile(x, y)).verdict == "none"


def test_classify_dc3_profile():
    # synthetic profile with F < F* on a threshold subinterval
    prof = DistributionProfile(
        n=2,
        thresholds=(Fraction(1, 4), Fraction(1, 2), Fraction(1)),
        F_values=(Fraction(0), Fraction(1, 4), Fraction(1)),
        Fstar_values=(Fraction(1, 2), Fraction(3, 4), Fraction(1)),
        exact=True, fstar_one_everywhere=False)
    assert classify_pair(prof).verdict == "DC3-not-DC2"


def test_classify_dc1_profile():
    prof = DistributionProfile(
        n=2,
        thresholds=(Fraction(1, 4), Fraction(1, 2), Fraction(1)),
        F_values=(Fraction(0), Fraction(1, 2), Fraction(1)),
        Fstar_values=(Fraction(1), Fraction(1), Fraction(1)),
        exact=True, fstar_one_everywhere=True)
    cls = classify_pair(prof)
    assert cls.verdict == "DC1" and not cls.evidence


def test_classify_dc2_profile_exact():
    prof = DistributionProfile(
        n=2,
        thresholds=(Fraction(1, 4), Fraction(1, 2), Fraction(1)),
        F_values=(Fraction(1, 3), Fraction(1, 2), Fraction(1)),
        Fstar_values=(Fraction(1), Fraction(1), Fraction(1)),
        exact=True, fstar_one_everywhere=True)
    assert classify_pair(prof).verdict == "DC2-not-DC1"


def test_empirical_never_dc1():
    prof = DistributionProfile(
        n=2,
        thresholds=(Fraction(1, 4), Fraction(1, 2), Fraction(1)),
        F_values=(Fraction(0), Fraction(0), Fraction(1)),
        Fstar_values=(Fraction(1), Fraction(1), Fraction(1)),
        exact=False, fstar_one_everywhere=True, horizon=1000)
    cls = classify_pair(prof)
    assert cls.verdict == "DC2-not-DC1" and cls.evidence


def _ud_positive_iff_F_below_one(x, y):
    d, e = diff_equal_densities(x, y)
    prof = distribution_profile(x, y)
    positives = [f for t, f in zip(prof.thresholds, prof.F_values) if t > 0]
    f_below_one = min(positives) < 1
    fstar_all_one = prof.fstar_one_everywhere
    assert (d > 0) == f_below_one
    assert (e == 1) == fstar_all_one
    # contrapositives are the same assertions read backwards; spell them out
    assert (d == 0) == (not f_below_one)
    assert (e < 1) == (not fstar_all_one)


def test_lemma_equivalence_suite():
    rng = random.Random(0xC0FFEE)
    for _ in range(50):
        def rand_point():
            pre = [rng.randint(0, 1) for _ in range(rng.randint(0, 4))]
            per = [rng.randint(0, 1) for _ in range(rng.randint(1, 12))]
            return periodic_point(pre, per)
        _ud_positive_iff_F_below_one(rand_point(), rand_point())


# -- scrambled family ---------------------------------------------------------

def test_family_requires_positive_density():
    with pytest.raises(PreconditionError):
        build_scrambled_family(FiniteSet(frozenset({4, 8})), 2, 1000)
    with pytest.raises(PreconditionError):
        build_scrambled_family(PeriodicSet((), (0,)), 2, 1000)


def test_family_requires_room():
    with pytest.raises(PreconditionError):
        build_scrambled_family(EVENS, 2, 10)


def test_family_growth_condition():
    fam = build_scrambled_family(EVENS, 2, 100_000)
    b = fam.b
    assert all(n * b[n - 1] <= b[n] for n in range(1, len(b)))
    assert fam.log["growth_ok"]


def test_family_members_inside_S():
    S = parse_set_expr("periodic:;110")
    fam = build_scrambled_family(S, 3, 100_000)
    for i in range(3):
        for p in fam.member_ones(i):
            assert S.contains(p)


def test_family_blocks_disjoint_across_members():
    fam = build_scrambled_family(EVENS, 2, 100_000, growth=20)
    ones = [set(fam.member_ones(i)) for i in range(2)]
    assert not (ones[0] & ones[1])
    # pairwise difference nonempty on every block with index in A_i \ A_j
    for i, A in enumerate(fam.index_sets):
        for n in A:
            lo, hi = fam.blocks[n - 1]
            block_ones = {p for p in ones[i] if lo < p <= hi}
            assert block_ones, "block %d of member %d is empty" % (n, i)


def test_family_measured_frequencies_evens():
    fam = build_scrambled_family(EVENS, 2, 100_000)
    rows = family_pair_frequencies(fam, 0, 1)
    diff_at = {cp: d for cp, d, _ in rows}
    equal_at = {cp: e for cp, _, e in rows}
    # the end of block 1 shows the Diff target, the following gap restores Equal
    assert any(diff_at[b] >= Fraction(2, 5) for b in fam.b)
    assert any(equal_at[b] >= Fraction(99, 100) for b in fam.b)


def test_family_profile_dc2_evidence():
    fam = build_scrambled_family(EVENS, 2, 100_000)
    prof = family_pair_profile(fam, 0, 1)
    assert not prof.exact
    cls = classify_pair(prof)
    assert cls.verdict == "DC2-not-DC1" and cls.evidence


def test_family_three_members_pairwise():
    S = parse_set_expr("periodic:;110")   # density 2/3
    fam = build_scrambled_family(S, 3, 100_000, growth=20)
    for i in range(3):
        for j in range(i + 1, 3):
            rows = family_pair_frequencies(fam, i, j)
            assert max(d for _, d, _ in rows) >= Fraction(1, 2)


# -- minimal DC1-style certificate --------------------------------------------

def test_dc1_minimal_witness_10():
    cls = dc1_minimal_witness(P("", "10"), 2)
    assert cls.certificates["F_value"] == 0
    assert cls.certificates["F_at_threshold"] == Fraction(1, 4)
    assert cls.certificates["fstar_one_everywhere"] is False
    assert cls.verdict != "DC1"


def test_dc1_minimal_witness_all_ones():
    cls = dc1_minimal_witness(P("", "1"), 1)
    assert cls.certificates["F_value"] == 0
    assert cls.certificates["F_at_threshold"] == Fraction(1, 2)


def test_dc1_minimal_witness_precondition():
    with pytest.raises(PreconditionError):
        dc1_minimal_witness(P("", "100"), 2)


# -- property tests -----------------------------------------------------------

points = st.builds(
    periodic_point,
    st.lists(st.integers(0, 1), max_size=3),
    st.lists(st.integers(0, 1), min_size=1, max_size=5),
)


@given(points, points)
@settings(max_examples=40)
def test_profile_invariants_property(x, y):
    prof = distribution_profile(x, y)
    assert list(prof.F_values) == sorted(prof.F_values)
    assert all(f <= fs for f, fs in zip(prof.F_values, prof.Fstar_values))
    assert prof.F_values[-1] == 1  # above the diameter everything is below t


@given(points, points)
@settings(max_examples=40)
def test_diff_equal_sum_to_one(x, y):
    d, e = diff_equal_densities(x, y)
    assert d + e == 1
    assert 0 <= d <= 1


@given(points, points)
@settings(max_examples=30)
def test_lemma_equivalence_property(x, y):
    _ud_positive_iff_F_below_one(x, y)
