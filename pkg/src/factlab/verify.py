"""Self-check suites run by ``factlab verify`` and a small benchmark harness."""
from __future__ import annotations

import math
import resource
import time
from dataclasses import asdict, dataclass, field

from . import combinatorics as comb
from .asymptotics import max_term_exact
from .counts import (F_count, G_count, as_signature, f_count, g_count, oracle_ordered,
                     oracle_unordered)
from .errors import InvalidArgument
from .moments import RunConfig, kalmar_trend, moment_sum
from .sieve import build_sieve, cached_sieve, pi_table_csv
from .special import (H_func, LOGLOG2, constants_report, expint_ei, gamma0, lambert_w,
                      zeta)

SQUAREFREE_LIMIT = 10**4

SUITES = ("oracle-counts", "bell-fubini", "special-fn", "sandwich", "kalmar-trend")

DEFAULT_LIMITS = {
    "oracle-counts": 2000,
    "bell-fubini": 0,
    "special-fn": 0,
    "sandwich": 10**5,
    "kalmar-trend": 10**6,
}


@dataclass
class Case:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    suite: str
    limit: int
    cases: list[Case] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.cases.append(Case(name, bool(passed), detail))

    def as_json(self) -> dict:
        return {
            "suite": self.suite,
            "limit": self.limit,
            "passed": self.passed,
            "cases": [asdict(c) for c in self.cases],
        }


def _oracle_counts(rep: VerifyReport) -> None:
    bad = {"f": [], "g": [], "F": [], "G": [], "squarefree": []}
    for n in range(1, rep.limit + 1):
        sig = as_signature(n)
        k = len(sig)
        if f_count(sig) != oracle_unordered(n):
            bad["f"].append(n)
        if g_count(sig) != oracle_ordered(n):
            bad["g"].append(n)
        if F_count(k) != oracle_unordered(n, coprime=True):
            bad["F"].append(n)
        if G_count(k) != oracle_ordered(n, coprime=True):
            bad["G"].append(n)
    # f = B_omega and g = a_omega on squarefree n, over a wider range
    for n in range(1, max(rep.limit, SQUAREFREE_LIMIT) + 1):
        sig = as_signature(n)
        if all(e == 1 for e in sig):
            k = len(sig)
            if f_count(sig) != comb.bell(k) or g_count(sig) != comb.fubini(k):
                bad["squarefree"].append(n)
    for name, miss in bad.items():
        rep.add(f"{name} matches enumeration", not miss, f"mismatches: {miss[:10]}")


def _bell_fubini(rep: VerifyReport) -> None:
    miss = [k for k in range(13) if comb.bell(k) != comb.enumerate_set_partitions(k)]
    rep.add("bell == set-partition enumeration, k <= 12", not miss, f"{miss}")
    miss = [k for k in range(11) if comb.fubini(k) != comb.enumerate_ordered_set_partitions(k)]
    rep.add("fubini == ordered-partition enumeration, k <= 10", not miss, f"{miss}")
    k = 1000
    lk, llk = math.log(k), math.log(math.log(k))
    err = abs(comb.log_bell_debruijn(k) - math.log(comb.bell(k)))
    tol = 0.5 * k * llk**2 / lk**2
    rep.add("de Bruijn error at k=1000", err < tol, f"error {err:.4f}, bound {tol:.4f}")
    r50 = abs(comb.bell_ratio_approx(50) / comb.bell_ratio(50) - 1)
    r500 = abs(comb.bell_ratio_approx(500) / comb.bell_ratio(500) - 1)
    rep.add("(k+1)/W(k) within 5% at k=50", r50 < 0.05, f"{r50:.3e}")
    rep.add("(k+1)/W(k) improves at k=500", r500 < r50, f"{r500:.3e} vs {r50:.3e}")


def _special_fn(rep: VerifyReport) -> None:
    grid = [10 ** (e / 4) for e in range(-24, 13)]
    worst = max(abs(lambert_w(x) * math.exp(lambert_w(x)) - x) / x for x in grid)
    rep.add("lambert_w residual", worst <= 1e-13, f"{worst:.3e}")
    ts = [0.05 * i for i in range(1, 401)]
    worst = max(abs(gamma0(t) + expint_ei(-t)) for t in ts)
    rep.add("gamma0(t) + Ei(-t) = 0", worst <= 1e-13, f"{worst:.3e}")
    worst = max(abs(H_func(t * math.exp(t) * gamma0(t)) - t) for t in [0.05 * i for i in range(1, 101)])
    rep.add("H inverts t e^t Gamma(0,t)", worst <= 1e-10, f"{worst:.3e}")
    rep.add("zeta(2) = pi^2/6", abs(zeta(2) - math.pi**2 / 6) <= 1e-12)
    cr = constants_report()
    for c in cr.entries():
        rep.add(f"{c.name} residual", c.residual <= 1e-10, f"{c.residual:.3e}")
    w = cr.w.value
    rep.add("w + log w + log log 2 = -1", abs(w + math.log(w) + LOGLOG2 + 1) <= 1e-12)
    rep.add("H(c*) = w", abs(H_func(cr.c_star.value) - w) <= 1e-8)


def _sandwich(rep: VerifyReport, config: RunConfig) -> None:
    table = build_sieve(rep.limit)
    for beta in (0.5, 1.0, 2.0):
        top = max_term_exact("F", beta, table)
        total = moment_sum("F", beta, rep.limit, table, config)
        if total.exact_sum is not None:
            ok = top.exact <= total.exact_sum <= top.n_terms * top.exact
        else:
            ok = top.log_value <= total.log_sum <= top.log_value + math.log(top.n_terms)
        rep.add(f"sandwich beta={beta}", ok, f"k*={top.k}, terms={top.n_terms}")


def _kalmar(rep: VerifyReport, config: RunConfig) -> None:
    if rep.limit < 10**3:
        raise InvalidArgument("kalmar-trend needs limit >= 1000")
    table = build_sieve(rep.limit)
    xs = [10**e for e in range(3, int(math.log10(rep.limit)) + 1)]
    if xs[-1] != rep.limit:
        xs.append(rep.limit)
    rows = kalmar_trend(xs, table, config)
    first, last = rows[0], rows[-1]
    rep.add("ratio in [0.85, 1.15] at the top limit", 0.85 <= last.ratio <= 1.15, f"{last.ratio:.6f}")
    rep.add("ratio improves from x=1000", abs(last.ratio - 1) < abs(first.ratio - 1),
            f"{last.ratio:.6f} vs {first.ratio:.6f}")


def verify(suite: str, limit: int | None = None, config: RunConfig | None = None) -> VerifyReport:
    if suite not in SUITES:
        raise InvalidArgument(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    config = config or RunConfig()
    rep = VerifyReport(suite, DEFAULT_LIMITS[suite] if limit is None else int(limit))
    if suite == "oracle-counts":
        _oracle_counts(rep)
    elif suite == "bell-fubini":
        _bell_fubini(rep)
    elif suite == "special-fn":
        _special_fn(rep)
    elif suite == "sandwich":
        _sandwich(rep, config)
    else:
        _kalmar(rep, config)
    return rep


# -- benchmarks --------------------------------------------------------------------

BENCH_TASKS = ("sieve", "moments", "pi-table")


def _max_rss_bytes() -> int:
    # ru_maxrss is in KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024


def bench(task: str, size: int, repeats: int = 1, config: RunConfig | None = None) -> dict:
    """Wall time, throughput and peak memory for one task at one size."""
    if task not in BENCH_TASKS:
        raise InvalidArgument(f"unknown task {task!r}; expected one of {', '.join(BENCH_TASKS)}")
    config = config or RunConfig()
    times = []
    for _ in range(repeats):
        if task == "sieve":
            t0 = time.perf_counter()
            build_sieve(size)
            times.append(time.perf_counter() - t0)
        else:
            table = cached_sieve(size, config.cache_dir)
            t0 = time.perf_counter()
            if task == "moments":
                moment_sum("f", 1, size, table, config)
            else:
                pi_table_csv(table)
            times.append(time.perf_counter() - t0)
    best = min(times)
    return {
        "task": task,
        "size": size,
        "seconds": times,
        "throughput_per_sec": size / best if best > 0 else None,
        "max_rss_bytes": _max_rss_bytes(),
    }
