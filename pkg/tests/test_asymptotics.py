import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from factlab import combinatorics as comb
from factlab.asymptotics import (THEOREMS, LogScale, ht_main_term, ht_variables, kstar_F, kstar_G,
                                 log_L, max_term_exact, max_term_synthetic, pomerance_main_term,
                                 predict, term_A, term_array, term_b, theorem_for)
from factlab.errors import InvalidArgument, OutOfRegime
from factlab.special import LOG2, constants_report, solve_rho, zeta_prime

LOGX_1E6 = math.log(1e6)


def test_logscale_construction():
    s = LogScale.from_logx(100.0)
    assert s.log2x == math.log(100.0) and s.log3x == math.log(math.log(100.0))
    big = LogScale.from_log2x(4000 * math.log(10))     # log x = 10^4000
    assert math.isinf(big.logx) and big.log3x > 0
    with pytest.raises(InvalidArgument):
        big.need_logx()
    with pytest.raises(InvalidArgument):
        LogScale.from_logx(1.0)
    with pytest.raises(InvalidArgument):
        LogScale.from_logx(2.0).need_log3x()


def test_log_L_examples():
    # log_3 x = 1 at log x = e^e; one more exponential gives log_3 x = e
    logx = math.exp(math.e)
    s = LogScale.from_logx(logx)
    assert s.log3x == pytest.approx(1.0, abs=1e-15)
    assert log_L(s) == pytest.approx(logx / s.log2x, rel=1e-14)
    logx = math.exp(math.exp(math.e))
    s = LogScale.from_logx(logx)
    assert s.log3x == pytest.approx(math.e, rel=1e-15)
    assert log_L(s) == pytest.approx(logx * math.e / s.log2x, rel=1e-14)
    assert log_L(LogScale.from_logx(1e6)) == pytest.approx(
        1e6 * math.log(math.log(1e6)) / math.log(1e6), rel=1e-15)
    grid = np.logspace(2, 12, 200)
    vals = [log_L(LogScale.from_logx(v)) for v in grid]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_predict_formulas_at_1e6():
    s = LogScale.from_logx(LOGX_1E6)
    cr = constants_report()
    lx, l2, l3 = s.logx, s.log2x, s.log3x
    assert predict("1.1", 1, s).log_sum == pytest.approx(lx + cr.c_F.value * math.sqrt(lx / l2))
    assert predict("1.2", 1, s).log_sum == pytest.approx(lx + cr.c_G.value * lx / l2)
    assert predict("1.3", 2, s).log_sum == pytest.approx(2 * lx - 2 * lx * l3 / l2)
    assert predict("1.5", 2, s).log_sum == pytest.approx(2 * lx - 4 * lx * l3 / l2)
    assert predict("1.4", 0.5, s).log_sum == pytest.approx(lx + (0.5 * l2 / l3**0.5) ** 2)
    assert predict("1.8", 0.5, s).log_sum == pytest.approx(lx + 0.5 * LOG2**-1 * l2**2)
    assert predict("1.9", 1, s).log_sum == pytest.approx(lx - l2 + math.sqrt(2 * l2 * l3))
    assert predict("1.10", 1, s).log_sum == pytest.approx(lx - l2 + 2 * math.sqrt(LOG2) * math.sqrt(l2))
    opp = predict("oppenheim", 1, s).log_sum
    assert opp == pytest.approx(math.log(1e6 * math.exp(2 * math.sqrt(lx)) / lx**0.75 / (2 * math.sqrt(math.pi))))
    rho = solve_rho()
    K = -1 / (rho * zeta_prime(rho))
    assert predict("kalmar", 1, s).log_sum == pytest.approx(math.log(K) + rho * LOGX_1E6, rel=1e-15)


def test_predict_range_errors():
    s = LogScale.from_logx(LOGX_1E6)
    for theorem, beta in [("1.5", 1.0), ("1.5", 0.5), ("1.4", 1.0), ("1.1", 2.0),
                          ("1.9", -1.0), ("1.8", 1.5)]:
        with pytest.raises(InvalidArgument):
            predict(theorem, beta, s)
    with pytest.raises(InvalidArgument):
        predict("2.7", 1.0, s)


@settings(max_examples=60, deadline=None)
@given(beta=st.floats(min_value=0.01, max_value=0.99), logx=st.floats(min_value=20, max_value=1e6))
def test_small_beta_G_predictor_equals_F(beta, logx):
    s = LogScale.from_logx(logx)
    assert predict("1.6", beta, s).log_sum == predict("1.4", beta, s).log_sum


@settings(max_examples=60, deadline=None)
@given(beta=st.floats(min_value=1.01, max_value=10), logx=st.floats(min_value=20, max_value=1e6))
def test_large_beta_G_predictor_dominates_F(beta, logx):
    s = LogScale.from_logx(logx)
    assert predict("1.7", beta, s).log_sum >= predict("1.5", beta, s).log_sum


def test_negative_f_predictor_continuous_at_zero():
    s = LogScale.from_logx(LOGX_1E6)
    values = [predict("1.9", b, s).log_sum for b in (1e-6, 2e-6, 3e-6)]
    assert max(values) - min(values) < 1e-4
    assert values[0] == pytest.approx(s.logx, abs=1e-4)     # the beta = 0 count x / log x * e^{log2 x}


def test_predictions_reproducible():
    s = LogScale.from_logx(LOGX_1E6)
    for theorem in THEOREMS:
        beta = {"1.3": 2.0, "1.5": 2.0, "1.7": 2.0, "1.4": 0.5, "1.6": 0.5, "1.8": 0.5}.get(theorem, 1.0)
        a, b = predict(theorem, beta, s), predict(theorem, beta, s)
        assert a == b and math.isfinite(a.log_sum)


def test_theorem_for():
    assert theorem_for("g", 1.0) == ("kalmar", 1.0)
    assert theorem_for("F", 2.0) == ("1.5", 2.0)
    assert theorem_for("G", -0.5) == ("1.10", 0.5)
    assert theorem_for("g", 2.0) is None


# -- term functions -------------------------------------------------------------

def test_term_k1_is_zero():
    for beta in (0.3, 1.0, 5.0):
        assert term_b(1, beta, 50.0) == 0.0
        assert term_A(1, beta, 50.0) == 0.0


def test_term_b_ratio_identity():
    beta, log2x, C = 1.5, 30.0, 0.7
    for k in range(1, 1000, 37):
        lhs = term_b(k + 1, beta, log2x, C) - term_b(k, beta, log2x, C)
        exact_ratio = math.log(comb.bell(k + 1)) - math.log(comb.bell(k))
        rhs = -beta * exact_ratio + math.log(log2x + C) - math.log(k)
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_term_array_matches_scalars():
    arr = term_array("F", 1200, 1.0, 1e3)
    for k in (1, 2, 500, 1024, 1025, 1200):
        assert arr[k - 1] == pytest.approx(term_b(k, 1.0, 1e3), rel=1e-12, abs=1e-9)
    arr = term_array("G", 300, 2.0, 1e3)
    for k in (1, 256, 257, 300):
        assert arr[k - 1] == pytest.approx(term_A(k, 2.0, 1e3), rel=1e-12, abs=1e-9)


def test_kstar_F_substitution():
    e = math.e
    assert kstar_F(1, LogScale.from_log2x(e)) == pytest.approx((0.5 * e * 1.0) ** 0.5, rel=1e-14)
    assert kstar_F(2, LogScale.from_log2x(e**e)) == pytest.approx((e**e * e**2 / 9) ** (1 / 3), rel=1e-14)
    l3 = math.log(100)
    assert kstar_F(0.5, LogScale.from_log2x(100)) == pytest.approx(
        (1.5**-0.5 * 100 * l3**0.5) ** (1 / 1.5), rel=1e-14)
    with pytest.raises(InvalidArgument):
        kstar_F(0, LogScale.from_log2x(100))


def test_kstar_G_examples():
    s = LogScale.from_log2x(1e4)
    assert kstar_G(1, s) == pytest.approx(math.sqrt(LOG2 * 1e4), rel=1e-15)
    assert kstar_G(1, s) == pytest.approx(83.26, abs=0.01)
    big = kstar_G(1e3, s)
    assert big == pytest.approx(1e4 ** (1 / 1001) * LOG2 ** (1000 / 1001), rel=0.01)
    assert kstar_G(1e-9, s) == pytest.approx(1e4, rel=1e-6)


def test_A_argmax_and_decay():
    s = LogScale.from_log2x(1e4)
    top = max_term_synthetic("G", 1.0, s, kmax=10**4)
    assert 80 <= top.k <= 86
    terms = term_array("G", 10**4, 1.0, 1e4)
    start = math.ceil(2 ** 0.5 * kstar_G(1.0, s))
    tail = terms[start - 1:]
    assert (np.diff(tail) < 0).all()


def test_b_argmax_and_single_crossing():
    s = LogScale.from_log2x(1e6)
    kstar = kstar_F(1.0, s)
    terms = term_array("F", 10**4, 1.0, 1e6)
    k = int(np.argmax(terms)) + 1
    assert abs(k - kstar) / kstar < 0.10
    up = np.diff(terms) > 0     # b_{k+1} / b_k > 1
    crossings = np.count_nonzero(up[:-1] != up[1:])
    assert crossings == 1


# -- pi(x, k) main terms ---------------------------------------------------------------

def test_ht_variables_substitution():
    s = LogScale.from_logx(1e300)
    k = 10**4
    v = ht_variables(k, s)
    assert v.L0 == pytest.approx(s.log2x - math.log(k) - math.log(math.log(k)), rel=1e-15)
    assert v.y == pytest.approx(k / v.L0, rel=1e-15)
    assert v.xi == pytest.approx(1e300 / (v.y * math.log(v.y)), rel=1e-14)
    assert v.R == pytest.approx((1 / v.L0) * (1 / v.y + 1 / v.L0), rel=1e-15)


def test_ht_M_decreasing_in_k():
    s = LogScale.from_logx(1e300)
    Ms = [ht_variables(k, s).M for k in range(1000, 200_000, 5000)]
    assert all(a > b for a, b in zip(Ms, Ms[1:]))


def test_pomerance_substitution():
    for logx, k in [(1e300, 10**4), (1e50, 100), (1e9, 5)]:
        s = LogScale.from_logx(logx)
        L0 = s.log2x - math.log(k) - math.log(math.log(k))
        expected = logx - math.lgamma(k + 1) - s.log2x + k * math.log(L0)
        assert pomerance_main_term(k, s) == pytest.approx(expected, rel=1e-14)


def test_main_term_guards():
    s = LogScale.from_x(1e8)
    with pytest.raises(InvalidArgument):
        ht_main_term(2, s)
    with pytest.raises(OutOfRegime):
        pomerance_main_term(9, s)


def test_ht_against_exact_1e8(sieve_1e8):
    s = LogScale.from_x(1e8)
    hist = sieve_1e8.omega_counts()
    # L0 = log2 x - log k - log log k drops below 1 from k = 5 on at x = 10^8
    for k in range(6, 11):
        with pytest.raises(OutOfRegime):
            ht_main_term(k, s)
    for k in (3, 4):
        assert abs(ht_main_term(k, s) - math.log(hist[k])) <= 1.5


# -- max term ---------------------------------------------------------------------------

def test_max_term_exact_brute(sieve_1e6):
    m = max_term_exact("G", 1.0, sieve_1e6)
    hist = sieve_1e6.omega_counts()
    values = [comb.fubini(k) * int(hist[k]) for k in range(len(hist))]
    assert m.exact == max(values) and m.k == values.index(max(values))
    assert m.n_terms == sum(1 for h in hist if h > 0)


def test_max_term_beta0_is_mode(sieve_1e8):
    m = max_term_exact("F", 0.0, sieve_1e8)
    assert abs(m.k - round(math.log(math.log(1e8)))) <= 1


def test_max_term_monotone_in_beta(sieve_1e6):
    ks = [max_term_exact("F", b, sieve_1e6).k for b in (0, 1, 2, 4)]
    assert ks == sorted(ks)


def test_max_term_ties_take_smallest_k(sieve_1e5):
    # beta = 0 on a histogram with pi(x, 0) = 1: force a tie through upto=2
    m = max_term_exact("F", 0.0, sieve_1e5, upto=2)
    assert m.k == 0 and m.exact == 1
