import math

import pytest

from factlab.counts import as_signature, f_count, g_count
from factlab.combinatorics import bell, fubini
from factlab.errors import InvalidArgument
from factlab.moments import RunConfig, kalmar_trend, logsumexp, moment_sum
from factlab.sieve import build_sieve
from factlab.special import solve_rho, zeta_prime


@pytest.fixture(scope="module")
def t1000():
    return build_sieve(1000)


def brute(fn, beta, x):
    vals = {"f": f_count, "g": g_count,
            "F": lambda n: bell(len(as_signature(n))),
            "G": lambda n: fubini(len(as_signature(n)))}[fn]
    return math.fsum(vals(n) ** beta for n in range(1, x + 1))


def test_examples(t1000):
    assert moment_sum("g", 1, 10, t1000).exact_sum == 19
    assert moment_sum("F", 1, 10, t1000).exact_sum == 12
    for x in (1, 10, 999):
        assert moment_sum("F", 0, x, t1000).exact_sum == x


@pytest.mark.parametrize("fn", ["f", "g", "F", "G"])
@pytest.mark.parametrize("beta", [0.5, 1, 2, -1, -2.5])
def test_against_brute_force(t1000, fn, beta):
    rep = moment_sum(fn, beta, 1000, t1000)
    assert rep.log_sum == pytest.approx(math.log(brute(fn, beta, 1000)), rel=1e-12)


@pytest.mark.parametrize("fn", ["F", "G"])
@pytest.mark.parametrize("beta", [0.5, 1, 2, -1])
def test_histogram_equals_per_n(sieve_1e5, fn, beta):
    a = moment_sum(fn, beta, 10**5, sieve_1e5, path="histogram")
    b = moment_sum(fn, beta, 10**5, sieve_1e5, path="per-n")
    assert abs(a.log_sum - b.log_sum) <= 1e-9
    if float(beta).is_integer() and beta >= 0:
        assert a.exact_sum == b.exact_sum


def test_monotone_in_x(sieve_1e5):
    xs = [10, 100, 1000, 10**4, 10**5]
    for fn in ("f", "g", "F", "G"):
        for beta in (0.5, 1, -1):
            logs = [moment_sum(fn, beta, x, sieve_1e5).log_sum for x in xs]
            assert all(a <= b for a, b in zip(logs, logs[1:]))


def test_unrestricted_dominates_coprime(sieve_1e5):
    for x in (100, 10**4, 10**5):
        for beta in (0.5, 1, 2):
            assert moment_sum("f", beta, x, sieve_1e5).log_sum >= moment_sum("F", beta, x, sieve_1e5).log_sum
            assert moment_sum("g", beta, x, sieve_1e5).log_sum >= moment_sum("G", beta, x, sieve_1e5).log_sum
        for beta in (-0.5, -1, -2):
            assert moment_sum("f", beta, x, sieve_1e5).log_sum <= moment_sum("F", beta, x, sieve_1e5).log_sum


def test_thread_count_does_not_matter(sieve_1e5):
    for beta in (1, 0.5, -1.5):
        outs = {
            threads: moment_sum("f", beta, 10**5, sieve_1e5, RunConfig(chunk_size=4096, threads=threads))
            for threads in (1, 4, 8)
        }
        assert len({(r.log_sum, r.exact_sum) for r in outs.values()}) == 1


def test_chunk_size_keeps_exact_sums(sieve_1e5):
    sums = {moment_sum("g", 2, 10**5, sieve_1e5, RunConfig(chunk_size=c)).exact_sum
            for c in (97, 777, 1 << 20)}
    assert len(sums) == 1


def test_errors(t1000):
    with pytest.raises(InvalidArgument):
        moment_sum("g", 1, 1001, t1000)
    with pytest.raises(InvalidArgument):
        moment_sum("h", 1, 10, t1000)
    with pytest.raises(InvalidArgument):
        moment_sum("f", 1, 10, t1000, path="histogram")
    with pytest.raises(InvalidArgument):
        RunConfig(chunk_size=0)
    with pytest.raises(InvalidArgument):
        RunConfig(threads=0)


def test_prediction_attached(t1000):
    rep = moment_sum("g", 1, 1000, t1000)
    assert rep.prediction.theorem == "kalmar"
    assert rep.log_ratio == pytest.approx(rep.log_sum - rep.prediction.log_sum)
    js = rep.as_json()
    assert js["exact_sum"] == "48614" and "elapsed" not in js
    assert "elapsed" in rep.as_json(timing=True)


def test_kalmar_small(t1000):
    rho = solve_rho()
    K = -1 / (rho * zeta_prime(rho))
    rows = kalmar_trend([10, 1000], t1000)
    assert rows[0].sum_g == 19
    assert rows[0].ratio == pytest.approx(19 / (K * 10**rho), rel=1e-14)
    assert rows == kalmar_trend([1000, 10], t1000)


def test_logsumexp():
    assert logsumexp([]) == -math.inf
    assert logsumexp([0.0, 0.0]) == pytest.approx(math.log(2))
    assert logsumexp([1000.0, 1000.0]) == pytest.approx(1000 + math.log(2))
