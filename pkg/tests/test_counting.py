import math
from fractions import Fraction

import pytest

from locfree import counting
from locfree.counting import GROUP, PROJECTIVE, RESTRICTED, SEMIGROUP


# --- transfer matrix -------------------------------------------------------


def test_transfer_matrix_small():
    assert counting.transfer_matrix(1).entries == ((0,),)
    assert counting.transfer_matrix(2).entries == ((0, 1), (1, 0))
    assert counting.transfer_matrix(3).entries == ((0, 1, 1), (1, 0, 1), (0, 1, 0))


def test_transfer_matrix_row_sums():
    n = 8
    t = counting.transfer_matrix(n)
    sums = [sum(row) for row in t.entries]
    assert sums[0] == n - 1
    assert sums[-1] == 1
    assert sums[1:-1] == [n - i + 1 for i in range(2, n)]


def test_transfer_matrix_rejects_zero():
    with pytest.raises(ValueError):
        counting.transfer_matrix(0)


# --- theta -----------------------------------------------------------------


def test_theta_two_columns():
    for s in range(1, 11):
        assert counting.theta_exact(2, s) == 2


def test_theta_three_columns():
    assert counting.theta_exact(3, 1) == 3
    assert counting.theta_exact(3, 2) == 5
    assert counting.theta_exact(3, 3) == 8


def test_theta_range_matches_pointwise():
    for n in (1, 2, 3, 5):
        rng = counting.theta_range(n, 9)
        assert rng == [counting.theta_exact(n, s) for s in range(1, 10)]


# --- count_words -----------------------------------------------------------


def test_count_examples():
    assert counting.count_words(2, 2, GROUP) == 12
    assert counting.count_words(3, 2, GROUP) == 26
    assert counting.count_words(2, 3, SEMIGROUP) == 8
    assert counting.count_words(3, 3, PROJECTIVE) == 8


def test_count_length_one():
    for n in (1, 2, 5, 9):
        assert counting.count_words(n, 1, GROUP) == 2 * n
        assert counting.count_words(n, 1, SEMIGROUP) == n


def test_free_group_and_semigroup_closed_forms():
    group = counting.count_words_range(2, 256, GROUP)
    semi = counting.count_words_range(2, 256, SEMIGROUP)
    for k in range(1, 257):
        assert group[k - 1] == 4 * 3 ** (k - 1)
        assert semi[k - 1] == 2**k
    # ratio -> 3 exactly for the free group
    assert Fraction(group[100], group[99]) == 3


def test_range_matches_single_calls():
    for variant, r in ((GROUP, None), (SEMIGROUP, None), (PROJECTIVE, None), (RESTRICTED, 4)):
        for n in (1, 3, 4):
            swept = counting.count_words_range(n, 7, variant, r)
            assert swept == [
                counting.count_words(n, k, variant, r) for k in range(1, 8)
            ]


def test_variant_validation():
    with pytest.raises(ValueError):
        counting.count_words(3, 2, "ring")
    with pytest.raises(ValueError):
        counting.count_words(3, 2, RESTRICTED)  # r missing
    with pytest.raises(ValueError):
        counting.count_words(3, 2, RESTRICTED, 1)
    with pytest.raises(ValueError):
        counting.count_words(3, 2, GROUP, 4)  # stray r


def test_large_r_restriction_is_vacuous():
    # classes mod r with r > 2K cannot wrap at length <= K, so the
    # restricted count collapses to the plain group count
    for k_max in (4, 6):
        r = 2 * k_max + 1
        assert counting.count_words_range(3, k_max, RESTRICTED, r) == (
            counting.count_words_range(3, k_max, GROUP)
        )


# --- restricted syllable counts --------------------------------------------


def test_syllable_gf_coefficients():
    assert counting.syllable_gf_coefficients(2) == [1]
    assert counting.syllable_gf_coefficients(3) == [2]
    assert counting.syllable_gf_coefficients(4) == [2, 1]
    assert counting.syllable_gf_coefficients(5) == [2, 2]
    assert counting.syllable_gf_coefficients(6) == [2, 2, 1]
    assert counting.syllable_gf_coefficients(7) == [2, 2, 2]


def test_restricted_syllable_examples():
    for k in range(1, 9):
        for s in range(1, k + 1):
            assert counting.restricted_syllable_count(2, k, s) == (1 if k == s else 0)
    assert counting.restricted_syllable_count(3, 2, 2) == 4
    assert counting.restricted_syllable_count(4, 3, 2) == 4


def test_restricted_syllable_bounds():
    with pytest.raises(ValueError):
        counting.restricted_syllable_count(1, 3, 2)
    with pytest.raises(ValueError):
        counting.restricted_syllable_count(4, 2, 3)


# --- spectrum --------------------------------------------------------------


def test_spectrum_small_exact():
    assert counting.spectrum_numeric(1) == [0.0]
    s2 = counting.spectrum_numeric(2)
    assert s2 == pytest.approx([1.0, -1.0], abs=1e-12)
    s3 = counting.spectrum_numeric(3)
    golden = (1 + math.sqrt(5)) / 2
    assert s3 == pytest.approx([golden, 1 - golden, -1.0], abs=1e-12)
    s6 = counting.spectrum_numeric(6)
    assert s6 == pytest.approx(
        [1 + math.sqrt(2), 1.0, 1 - math.sqrt(2), -1.0, -1.0, -1.0], abs=1e-12
    )


def test_spectrum_matches_cosine_form():
    for n in (2, 5, 10, 17, 30, 45):
        numeric = counting.spectrum_numeric(n)
        closed = counting.cosine_formula_spectrum(n)
        assert max(abs(a - b) for a, b in zip(numeric, closed)) < 1e-9
        wrong = counting.cosine_formula_spectrum(n, offset=1)
        assert max(abs(a - b) for a, b in zip(numeric, wrong)) > 1e-2


def test_lambda_max_monotone_to_three():
    lams = [counting.lambda_max(n) for n in (2, 5, 10, 25, 60, 100)]
    assert all(a < b for a, b in zip(lams, lams[1:]))
    assert lams[-1] < 3.0
    assert 3.0 - lams[-1] < 4 * math.pi**2 / 102**2 + 1e-6


# --- characteristic polynomial ---------------------------------------------


def test_charpoly_eval_examples():
    assert counting.charpoly_eval(1, 7) == -7
    assert counting.charpoly_eval(2, 2) == 3  # a_2 = x^2 - 1
    assert counting.charpoly_eval(3, -1) == 0
    assert counting.charpoly_eval(3, Fraction(1, 2)) == Fraction(15, 8)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 13, 21, 30])
def test_charpoly_recursion_certified_by_matrix(n):
    assert counting.charpoly_coefficients(n) == counting.charpoly_from_matrix(n)


def test_charpoly_eval_matches_coefficients():
    for n in (4, 9):
        coeffs = counting.charpoly_coefficients(n)
        for lam in (Fraction(-3), Fraction(1, 3), Fraction(2), Fraction(7, 2)):
            horner = Fraction(0)
            for c in coeffs:
                horner = horner * lam + c
            assert counting.charpoly_eval(n, lam) == horner


def test_charpoly_closed_form_agrees():
    for n in (2, 5, 11, 24):
        for lam in (-0.75, -0.2, 0.5, 1.3, 2.4, 2.9):
            rec = counting.charpoly_eval(n, lam)
            closed = counting.charpoly_closed_form(n, lam)
            assert closed == pytest.approx(rec, rel=1e-9, abs=1e-9)


def test_eigenvalues_are_charpoly_roots():
    # normalized backward error: raw a_n values are astronomically
    # scaled, so divide by the Horner magnitude of the evaluation
    for n in (6, 14, 30):
        coeffs = counting.charpoly_coefficients(n)
        for lam in counting.spectrum_numeric(n):
            mag = 0.0
            for c in coeffs:
                mag = mag * abs(lam) + abs(c)
            assert abs(counting.charpoly_eval(n, lam)) <= 1e-9 * mag


# --- volumes ---------------------------------------------------------------


def test_limit_log_volume_constants():
    assert counting.limit_log_volume(GROUP) == pytest.approx(math.log(7), abs=1e-12)
    assert counting.limit_log_volume(SEMIGROUP) == pytest.approx(math.log(4), abs=1e-12)
    assert counting.limit_log_volume(PROJECTIVE) == pytest.approx(math.log(3), abs=1e-12)
    assert counting.limit_log_volume(RESTRICTED, 2) == pytest.approx(math.log(3), abs=1e-10)
    assert counting.limit_log_volume(RESTRICTED, 3) == pytest.approx(math.log(6), abs=1e-10)
    assert counting.limit_log_volume(RESTRICTED, 4) == pytest.approx(
        math.log(3 + 2 * math.sqrt(3)), abs=1e-10
    )


def test_limit_log_volume_finite_n():
    assert counting.limit_log_volume(GROUP, n=2) == pytest.approx(math.log(3), abs=1e-12)
    vols = [counting.limit_log_volume(GROUP, n=n) for n in (2, 4, 8, 16, 64)]
    assert all(a < b for a, b in zip(vols, vols[1:]))
    assert vols[-1] < math.log(7)


def test_log_volume_estimate_free_group():
    assert counting.log_volume_estimate(2, 40, GROUP) == pytest.approx(
        math.log(3), abs=1e-12
    )


def test_volume_ratio_error_shrinks():
    # ratios oscillate around the limit (NOT monotone: the subdominant
    # eigenvalues of 2T+I alternate in sign), but the error contracts
    # geometrically and is < 1e-6 by K = 8n at these sizes
    for variant in (GROUP, SEMIGROUP):
        for n in (3, 6):
            limit = counting.limit_log_volume(variant, n=n)
            errs = [
                abs(counting.log_volume_estimate(n, k, variant) - limit)
                for k in (2 * n, 4 * n, 8 * n)
            ]
            assert errs[2] <= errs[1] <= errs[0]
            assert errs[2] < 1e-6


def test_volume_report_shape_and_acceleration():
    rep = counting.volume_report(8, 48, GROUP)
    assert rep.variant == GROUP and rep.n == 8 and rep.k_max == 48
    assert len(rep.log_ratios) == 47
    assert rep.log_ratios[-1] == pytest.approx(math.log(rep.ratio_last), abs=1e-12)
    limit_ratio = math.exp(rep.finite_n_limit)
    assert abs(rep.ratio_accelerated - limit_ratio) < abs(rep.ratio_last - limit_ratio)
    assert rep.asymptotic_limit == pytest.approx(math.log(7), abs=1e-12)


def test_theta_ratio_converges_to_lambda_max():
    thetas = counting.theta_range(30, 161)
    lam = counting.lambda_max(30)
    errs = [abs(thetas[s] / thetas[s - 1] - lam) for s in (40, 80, 160)]
    assert errs[2] < errs[1] < errs[0]
    assert errs[0] < 0.1


def test_theta_asymptotic_is_positive_diagnostic():
    assert counting.theta_asymptotic(30, 40) > 0
    with pytest.raises(ValueError):
        counting.theta_asymptotic(3, 5)
