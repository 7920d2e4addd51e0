"""Bell numbers B_k and ordered Bell (Fubini) numbers a_k.

Exact values come from integer recurrences and are cached for the life of
the process.  ``log_bell_array`` / ``log_fubini_array`` serve the k-scans in
:mod:`factlab.asymptotics`, where k runs far past what exact integers can
reach cheaply:

* Bell: exact up to ``EXACT_LOG_MAX``; then the Bell triangle run in
  floating point with per-row rescaling (relative error ~1e-13) up to
  ``TRIANGLE_LOG_MAX``; then the Moser-Wyman saddle-point formula.
* Fubini: exact up to ``FUBINI_EXACT_LOG_MAX``, then ``k! / (2 (log 2)^(k+1))``,
  whose relative error is below ``(log 2 / 2 pi)^k``.
"""
from __future__ import annotations

import csv
import io
import math
import threading
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .errors import InvalidArgument
from .special import LOG2, lambert_w

EXACT_LOG_MAX = 1024
FUBINI_EXACT_LOG_MAX = 256
TRIANGLE_LOG_MAX = 1 << 15
ORACLE_MAX = 12


class BellCache:
    """Append-only store of exact Bell numbers, grown by the Bell triangle."""

    def __init__(self) -> None:
        self.exact: list[int] = [1, 1]
        self.triangle_row: list[int] = [1, 2]   # row 1 of the triangle
        self._lock = threading.Lock()

    def ensure(self, k: int) -> None:
        if k < len(self.exact):
            return
        with self._lock:
            row = self.triangle_row
            while len(self.exact) <= k:
                new = [row[-1]]
                for v in row:
                    new.append(new[-1] + v)
                self.exact.append(new[0])
                row = new
            self.triangle_row = row

    def __getitem__(self, k: int) -> int:
        self.ensure(k)
        return self.exact[k]


class FubiniCache:
    """Append-only store of exact ordered Bell numbers."""

    def __init__(self) -> None:
        self.exact: list[int] = [1]
        self._lock = threading.Lock()

    def ensure(self, k: int) -> None:
        if k < len(self.exact):
            return
        with self._lock:
            a = self.exact
            while len(a) <= k:
                n = len(a)
                total = 0
                binom = 1
                for j in range(1, n + 1):
                    binom = binom * (n - j + 1) // j
                    total += binom * a[n - j]
                a.append(total)

    def __getitem__(self, k: int) -> int:
        self.ensure(k)
        return self.exact[k]


_BELL = BellCache()
_FUBINI = FubiniCache()


def _check_k(k: int) -> int:
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    return int(k)


def bell(k: int) -> int:
    return _BELL[_check_k(k)]


def fubini(k: int) -> int:
    return _FUBINI[_check_k(k)]


# -- asymptotic forms ----------------------------------------------------------

def log_bell_debruijn(k: int) -> float:
    """Five-term expansion of log B_k: k log k - k log log k - k + k log log k / log k + k / log k."""
    if k < 3:
        raise InvalidArgument(f"need k >= 3 for iterated logs, got {k}")
    lk = math.log(k)
    llk = math.log(lk)
    return k * lk - k * llk - k + k * llk / lk + k / lk


def log_fubini_asymptotic(k: int) -> float:
    """log of k! / (2 log 2 (log 2)^k)."""
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    return -math.log(2 * LOG2) + math.lgamma(k + 1) - k * math.log(LOG2)


def log_bell_moser_wyman(k: int, h: int = 0) -> float:
    """Saddle-point approximation to log B_{k+h} with W = W(k); the O(e^-W) factor is dropped."""
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    w = lambert_w(k)
    n = k + h
    return (
        math.lgamma(n + 1)
        - n * math.log(w)
        + math.expm1(w)
        - 0.5 * math.log(2 * math.pi * (w * w + w) * math.exp(w))
    )


def bell_ratio_approx(k: int) -> float:
    """(k + 1) / W(k), the leading behaviour of B_{k+1} / B_k."""
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    return (k + 1) / lambert_w(k)


def bell_ratio(k: int) -> float:
    """Exact B_{k+1} / B_k rounded to float."""
    return float(Fraction(bell(k + 1), bell(k)))


# -- log tables for k-scans -------------------------------------------------------

class _LogBellTriangle:
    """Bell triangle in float64, each row rescaled by its last entry."""

    def __init__(self) -> None:
        self.values = [0.0, 0.0]            # log B_0, log B_1
        self.row = np.array([1.0, 2.0])     # row 1, scaled
        self.row_log_scale = 0.0
        self._lock = threading.Lock()

    def ensure(self, k: int) -> None:
        if k < len(self.values):
            return
        with self._lock:
            row, scale = self.row, self.row_log_scale
            while len(self.values) <= k:
                new = np.empty(len(row) + 1)
                new[0] = row[-1]
                np.cumsum(row, out=new[1:])
                new[1:] += row[-1]
                top = new[-1]
                scale += math.log(top)
                new /= top
                row = new
                self.values.append(scale + math.log(row[0]))
            self.row, self.row_log_scale = row, scale


_LOG_TRIANGLE = _LogBellTriangle()


def log_bell(k: int) -> float:
    k = _check_k(k)
    if k <= EXACT_LOG_MAX:
        return math.log(bell(k))
    if k <= TRIANGLE_LOG_MAX:
        _LOG_TRIANGLE.ensure(k)
        return _LOG_TRIANGLE.values[k]
    return log_bell_moser_wyman(k)


def log_fubini(k: int) -> float:
    k = _check_k(k)
    if k <= FUBINI_EXACT_LOG_MAX:
        return math.log(fubini(k))
    return log_fubini_asymptotic(k)


def log_bell_array(kmax: int) -> np.ndarray:
    """``[log B_0, ..., log B_kmax]`` as float64."""
    kmax = _check_k(kmax)
    out = np.empty(kmax + 1)
    top = min(kmax, EXACT_LOG_MAX)
    _BELL.ensure(top)
    out[: top + 1] = [math.log(b) for b in _BELL.exact[: top + 1]]
    if kmax > EXACT_LOG_MAX:
        mid = min(kmax, TRIANGLE_LOG_MAX)
        _LOG_TRIANGLE.ensure(mid)
        out[EXACT_LOG_MAX + 1 : mid + 1] = _LOG_TRIANGLE.values[EXACT_LOG_MAX + 1 : mid + 1]
    if kmax > TRIANGLE_LOG_MAX:
        out[TRIANGLE_LOG_MAX + 1 :] = [
            log_bell_moser_wyman(k) for k in range(TRIANGLE_LOG_MAX + 1, kmax + 1)
        ]
    return out


def log_fubini_array(kmax: int) -> np.ndarray:
    kmax = _check_k(kmax)
    out = np.empty(kmax + 1)
    top = min(kmax, FUBINI_EXACT_LOG_MAX)
    _FUBINI.ensure(top)
    out[: top + 1] = [math.log(a) for a in _FUBINI.exact[: top + 1]]
    if kmax > FUBINI_EXACT_LOG_MAX:
        k = np.arange(FUBINI_EXACT_LOG_MAX + 1, kmax + 1, dtype=np.float64)
        out[FUBINI_EXACT_LOG_MAX + 1 :] = -math.log(2 * LOG2) + gammaln(k + 1) - k * math.log(LOG2)
    return out


# -- enumeration oracles ------------------------------------------------------------

def restricted_growth_strings(k: int):
    """Yield set partitions of {0..k-1} as restricted growth strings."""
    if k == 0:
        yield ()
        return
    a = [0] * k

    def rec(i: int, top: int):
        if i == k:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def _oracle_guard(k: int, cap: int) -> None:
    if not 0 <= k <= cap:
        raise InvalidArgument(f"enumeration oracle is limited to 0 <= k <= {cap}, got {k}")


def enumerate_set_partitions(k: int) -> int:
    """Count set partitions of a k-set by explicit enumeration (k <= 12)."""
    _oracle_guard(k, ORACLE_MAX)
    return sum(1 for _ in restricted_growth_strings(k))


def enumerate_ordered_set_partitions(k: int) -> int:
    """Count ordered set partitions: each set partition weighted by (number of blocks)!."""
    _oracle_guard(k, 10)
    return sum(math.factorial(max(s, default=-1) + 1) for s in restricted_growth_strings(k))


def bell_csv(kmax: int) -> str:
    """CSV with k, B_k, a_k, asymptotic logs and successive ratios for k <= kmax."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "k", "bell", "fubini", "log_bell", "log_bell_debruijn",
        "log_fubini", "log_fubini_asymptotic", "bell_ratio", "bell_ratio_approx",
    ])
    for k in range(kmax + 1):
        writer.writerow([
            k,
            bell(k),
            fubini(k),
            repr(log_bell(k)),
            repr(log_bell_debruijn(k)) if k >= 3 else "",
            repr(log_fubini(k)),
            repr(log_fubini_asymptotic(k)) if k >= 1 else "",
            repr(bell_ratio(k)),
            repr(bell_ratio_approx(k)) if k >= 1 else "",
        ])
    return buf.getvalue()
