from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from mpmath import log, mp, mpf, sqrt

from hyperexp.bounds import (
    alpha1_radius,
    corollary1_bound,
    ehssc_ratio_bound,
    required_family_size,
    theorem1_bound,
    theorem1_terms,
    theorem3_bound,
    validate_tau,
)
from hyperexp.graph import DomainError

HALF = Fraction(1, 2)

# reference values from an independent 40-digit mpmath evaluation of the closed forms
T1_BALL_P100 = Fraction("0.3161230711457087724136364273059031795658")
T1_POWER_P100 = Fraction("0.1005037815259212075489373556566874752705")
T1_DECAY_P100 = Fraction("18.18061983329361479107423586119700411719")
C1_SECOND = Fraction("962.6039577521112230200056394431629849868")
T3_SECOND = Fraction("276.9591619597747199145321364067674974275")
ALPHA1_99 = Fraction("0.3553526561095071266908856503575735732779")

TIGHT = Fraction(1, 10 ** 30)


def assert_upper(value: Fraction, reference: Fraction):
    # reference is correct to ~40 digits; the enclosure must sit just above the true value
    assert reference - TIGHT <= value <= reference + TIGHT


def test_theorem1_terms_on_p100():
    terms = theorem1_terms(99, 100, 2, HALF, HALF)
    assert_upper(terms.ball_term, T1_BALL_P100)
    assert_upper(terms.power_term, T1_POWER_P100)
    assert_upper(terms.decay_term, T1_DECAY_P100)
    assert terms.bound == terms.ball_term
    assert theorem1_bound(99, 100, 2, HALF, HALF) == terms.ball_term


def test_theorem1_large_for_delta_one():
    assert theorem1_bound(1, 100, 3, HALF, HALF) > 1


@given(st.integers(1, 500), st.integers(1, 500))
def test_ball_term_non_increasing_in_delta(a, b):
    lo, hi = sorted((a, b))
    assert theorem1_terms(hi, 1000, 3, HALF, HALF).ball_term <= \
        theorem1_terms(lo, 1000, 3, HALF, HALF).ball_term


def test_corollary1_example():
    value = corollary1_bound(2 ** 16, 4, HALF, HALF)
    assert_upper(value, C1_SECOND)


def test_corollary1_first_term_at_d_equal_n():
    # second term is huge here as well, so only check the first term reaches 1
    assert corollary1_bound(64, 64, HALF, HALF) >= 1


def test_corollary1_first_term_monotone_in_mu():
    mp.dps = 30
    first = [(log(4) / log(2 ** 16)) ** (1 - mpf(m)) for m in ("0.2", "0.5", "0.8")]
    assert first[0] < first[1] < first[2]


def test_theorem3_example():
    assert_upper(theorem3_bound(64, 8, 200, 3, HALF, HALF), T3_SECOND)


def test_alpha1_and_family_size():
    assert_upper(alpha1_radius(99, 2, HALF), ALPHA1_99)
    assert required_family_size(99, 2, HALF) == 1
    # floor(sqrt(10^6) / 56) = floor(17.857) = 17
    assert required_family_size(10 ** 6, 2, HALF) == 17


def test_upper_enclosure_never_below_independent_value():
    mp.dps = 50
    for Delta, n, d in [(7, 20, 3), (40, 500, 4), (300, 1000, 2)]:
        ref = 8 * log(mpf(n) / 2) / Delta
        assert theorem1_terms(Delta, n, d, HALF, HALF).ball_term >= Fraction(str(ref))  \
            - Fraction(1, 10 ** 45)
        ref_a = sqrt(Delta) / (14 * log(2 * d, 2))
        assert alpha1_radius(Delta, d, HALF) >= Fraction(str(ref_a)) - Fraction(1, 10 ** 45)


@pytest.mark.parametrize("kwargs", [
    dict(Delta=10, n=3, d=2, delta=HALF, mu=HALF),
    dict(Delta=10, n=10, d=1, delta=HALF, mu=HALF),
    dict(Delta=10, n=10, d=2, delta=Fraction(1, 4), mu=HALF),
    dict(Delta=10, n=10, d=2, delta=HALF, mu=1),
    dict(Delta=0, n=10, d=2, delta=HALF, mu=HALF),
])
def test_theorem1_domain(kwargs):
    with pytest.raises(DomainError):
        theorem1_bound(**kwargs)


def test_validate_tau():
    with pytest.raises(DomainError):
        validate_tau(8, 1, HALF, 2, HALF)
    ok = validate_tau(10 ** 6, 1, HALF, 2, HALF)
    assert ok and ok.reason == "ok"
    small = validate_tau(100, 1, HALF, 2, HALF)
    assert not small and not small.statement_ok and not small.growth_ok
    quarter = validate_tau(40, 10, HALF, 2, HALF)
    assert not quarter.quarter_ok


def test_validate_tau_growth_threshold_for_tau_one():
    # with tau=1, delta=1/2, d=2 the growth inequality reduces to sqrt(D)/28 > log2(180),
    # i.e. D > (28 log2 180)^2 = 44004.24... (solved independently with mpmath.findroot)
    assert not validate_tau(44_004, 1, HALF, 2, HALF).growth_ok
    assert validate_tau(44_005, 1, HALF, 2, HALF).growth_ok


def test_ehssc_ratio_bound_power_dominates():
    assert ehssc_ratio_bound(2, HALF, 8) == 2 ** 7
