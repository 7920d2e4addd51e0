"""Shape checks for pi(x, k) against the Hardy-Ramanujan and Sathe-Selberg forms.

Neither form comes with explicit constants.  HR_C2 is fixed by convention;
HR_C1 was calibrated once as the largest ratio pi(x, k) / shape(x, k) over
k >= 1 at x = 10^6 (1.0878), rounded up, and is frozen here.
"""
from __future__ import annotations

import math

from .errors import InvalidArgument
from .sieve import SieveTable

HR_C1 = 1.09
HR_C2 = 1.1714


def _logs(x: int) -> tuple[float, float]:
    if x < 16:
        raise InvalidArgument(f"need x >= 16 so that log log x > 1, got {x}")
    lx = math.log(x)
    return lx, math.log(lx)


def hardy_ramanujan_bound(x: int, k: int, c1: float = HR_C1, c2: float = HR_C2) -> float:
    """c1 x / log x * (log log x + c2)^(k-1) / (k-1)!  for k >= 1."""
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    lx, l2x = _logs(x)
    return c1 * x / lx * math.exp((k - 1) * math.log(l2x + c2) - math.lgamma(k))


def sathe_selberg_shape(x: int, k: int) -> float:
    """x / log x * (log log x)^(k-1) / (k-1)!  for k >= 1."""
    if k < 1:
        raise InvalidArgument(f"need k >= 1, got {k}")
    lx, l2x = _logs(x)
    return x / lx * math.exp((k - 1) * math.log(l2x) - math.lgamma(k))


def hardy_ramanujan_violations(table: SieveTable, x: int | None = None) -> list[int]:
    """Every k >= 1 with pi(x, k) above the frozen bound."""
    hist = table.omega_counts(x)
    x = table.limit if x is None else x
    return [k for k in range(1, len(hist)) if hist[k] > hardy_ramanujan_bound(x, k)]


def sathe_selberg_ratios(table: SieveTable, kmax: int = 5, x: int | None = None) -> list[float]:
    """pi'(x, k) / shape(x, k) for k = 1..kmax."""
    hist = table.omega_counts(x, squarefree=True)
    x = table.limit if x is None else x
    return [
        (int(hist[k]) if k < len(hist) else 0) / sathe_selberg_shape(x, k)
        for k in range(1, kmax + 1)
    ]
