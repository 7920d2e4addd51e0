"""Moment sums  sum_{n <= x} h(n)^beta  for h in {f, g, F, G}.

Two routes:

* ``histogram`` (F and G only): sum_k h_k^beta pi(x, k), straight from the
  omega histogram of the sieve.
* ``per-n``: [1, x] is cut into chunks of ``chunk_size`` integers; each
  chunk tallies its signatures and reduces to an exact integer (whole
  beta >= 0) or a log partial sum.  Chunk results are merged in ascending
  order, so the output depends on ``chunk_size`` but never on the number
  of worker threads.

n = 1 is included (h(1) = 1 for all four functions).
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import combinatorics as comb
from .asymptotics import LogScale, Prediction, predict, theorem_for
from .counts import count_by_signature
from .errors import InvalidArgument
from .sieve import SieveTable, signature_index
from .special import solve_rho, zeta_prime

FUNCTIONS = ("f", "g", "F", "G")


@dataclass(frozen=True)
class RunConfig:
    chunk_size: int = 1 << 20
    threads: int = 1
    fmt: str = "json"
    output: str | None = None
    cache_dir: str | None = None

    def __post_init__(self) -> None:
        if self.chunk_size < 1:
            raise InvalidArgument(f"chunk_size must be >= 1, got {self.chunk_size}")
        if self.threads < 1:
            raise InvalidArgument(f"threads must be >= 1, got {self.threads}")
        if self.fmt not in ("csv", "json"):
            raise InvalidArgument(f"format must be csv or json, got {self.fmt!r}")

    @property
    def workers(self) -> int:
        cap = os.environ.get("FACTLAB_THREADS")
        if cap:
            return max(1, min(self.threads, int(cap)))
        return self.threads


def logsumexp(logs) -> float:
    """log(sum(exp(v))) with a max shift and compensated summation."""
    logs = [float(v) for v in logs]
    if not logs:
        return -math.inf
    top = max(logs)
    if math.isinf(top):
        return top
    return top + math.log(math.fsum(math.exp(v - top) for v in logs))


def _is_whole(beta: float) -> bool:
    return beta >= 0 and float(beta).is_integer()


def _check(fn: str, limit: int, table: SieveTable) -> None:
    if fn not in FUNCTIONS:
        raise InvalidArgument(f"unknown function {fn!r}; expected one of {FUNCTIONS}")
    if not 1 <= limit <= table.limit:
        raise InvalidArgument(f"limit {limit} outside the sieve range [1, {table.limit}]")


def _chunks(limit: int, size: int) -> list[tuple[int, int]]:
    return [(a, min(a + size, limit + 1)) for a in range(1, limit + 1, size)]


def chunk_signature_counts(table: SieveTable, limit: int, config: RunConfig) -> list[np.ndarray]:
    """Per-chunk tallies of signature ids over [1, limit], in chunk order."""
    ids, sigs = signature_index(table)
    nsig = len(sigs)

    def tally(bounds: tuple[int, int]) -> np.ndarray:
        a, b = bounds
        return np.bincount(ids[a:b], minlength=nsig).astype(np.int64)

    chunks = _chunks(limit, config.chunk_size)
    if config.workers == 1:
        return [tally(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        return list(pool.map(tally, chunks))


def signature_counts(table: SieveTable, limit: int, config: RunConfig | None = None) -> np.ndarray:
    config = config or RunConfig()
    total = np.zeros(len(signature_index(table)[1]), dtype=np.int64)
    for part in chunk_signature_counts(table, limit, config):
        total += part
    return total


@dataclass
class MomentReport:
    fn: str
    beta: float
    limit: int
    log_sum: float
    exact_sum: int | None = None
    elapsed: float = 0.0
    path: str = "per-n"
    prediction: Prediction | None = None
    log_ratio: float | None = None
    extra: dict = field(default_factory=dict)

    def as_json(self, timing: bool = False) -> dict:
        out = {
            "fn": self.fn,
            "beta": self.beta,
            "limit": self.limit,
            "path": self.path,
            "exact_sum": str(self.exact_sum) if self.exact_sum is not None else None,
            "log_sum": self.log_sum,
        }
        if self.prediction is not None:
            out["prediction"] = {
                "theorem": self.prediction.theorem,
                "beta": self.prediction.beta,
                "log_sum": self.prediction.log_sum,
            }
            out["log_ratio"] = self.log_ratio
        if timing:
            out["elapsed"] = self.elapsed
        return out


def _log_int(n: int) -> float:
    return math.log(n) if n > 0 else -math.inf


def _histogram_sum(fn: str, beta: float, limit: int, table: SieveTable):
    hist = table.omega_counts(limit)
    count = comb.bell if fn == "F" else comb.fubini
    ks = [k for k in range(len(hist)) if hist[k] > 0]
    if _is_whole(beta):
        b = int(beta)
        exact = sum(count(k) ** b * int(hist[k]) for k in ks)
        return exact, _log_int(exact)
    return None, logsumexp(beta * math.log(count(k)) + math.log(int(hist[k])) for k in ks)


def _per_n_sum(fn: str, beta: float, limit: int, table: SieveTable, config: RunConfig):
    sigs = signature_index(table)[1]
    parts = chunk_signature_counts(table, limit, config)
    # only signatures that occur need a count evaluated
    present = np.flatnonzero(sum(parts))
    values = {int(i): count_by_signature(fn, sigs[i]) for i in present}
    if _is_whole(beta):
        b = int(beta)
        powered = {i: v**b for i, v in values.items()}
        exact = 0
        for part in parts:
            exact += sum(int(part[i]) * powered[i] for i in np.flatnonzero(part))
        return exact, _log_int(exact)
    logs = {i: beta * math.log(v) for i, v in values.items()}
    partials = []
    for part in parts:
        nz = np.flatnonzero(part)
        partials.append(logsumexp(math.log(int(part[i])) + logs[int(i)] for i in nz))
    return None, logsumexp(partials)


def moment_sum(fn: str, beta: float, limit: int, table: SieveTable,
               config: RunConfig | None = None, path: str | None = None) -> MomentReport:
    """sum_{n <= limit} fn(n)^beta.

    ``path`` defaults to ``histogram`` for F and G and ``per-n`` otherwise.
    Whole beta >= 0 gives an exact integer; any other beta is accumulated
    in log space.
    """
    config = config or RunConfig()
    beta = float(beta)
    _check(fn, limit, table)
    if path is None:
        path = "histogram" if fn in ("F", "G") else "per-n"
    start = time.perf_counter()
    if path == "histogram":
        if fn not in ("F", "G"):
            raise InvalidArgument("the histogram path exists only for F and G")
        exact, log_sum = _histogram_sum(fn, beta, limit, table)
    elif path == "per-n":
        exact, log_sum = _per_n_sum(fn, beta, limit, table, config)
    else:
        raise InvalidArgument(f"unknown path {path!r}")
    elapsed = time.perf_counter() - start
    report = MomentReport(fn, beta, limit, log_sum, exact, elapsed, path)
    which = theorem_for(fn, beta)
    if which is not None and limit >= 3:
        try:
            report.prediction = predict(which[0], which[1], LogScale.from_x(limit))
            report.log_ratio = log_sum - report.prediction.log_sum
        except InvalidArgument:
            pass
    return report


@dataclass(frozen=True)
class KalmarRow:
    x: int
    sum_g: int
    ratio: float


def kalmar_trend(limits, table: SieveTable, config: RunConfig | None = None) -> list[KalmarRow]:
    """Exact sum of g(n) for each x in ``limits`` against K x^rho."""
    config = config or RunConfig()
    rho = solve_rho()
    K = -1.0 / (rho * zeta_prime(rho))
    rows = []
    for x in sorted(int(v) for v in limits):
        rep = moment_sum("g", 1, x, table, config)
        ratio = math.exp(_log_int(rep.exact_sum) - math.log(K) - rho * math.log(x))
        rows.append(KalmarRow(x, rep.exact_sum, ratio))
    return rows
