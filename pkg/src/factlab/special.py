"""Real special functions and the named constants built from them.

Everything here works in binary64.  Accuracy targets:

* ``lambert_w``: relative residual of ``w * exp(w) = x`` below 1e-13.
* ``expint_ei`` / ``gamma0``: absolute error below 1e-13.
* ``zeta`` / ``zeta_prime``: absolute error below 1e-12 for s > 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from functools import cache, lru_cache

import numpy as np
from scipy.optimize import brentq

from .errors import OutOfDomain

EULER_GAMMA = 0.577215664901532860606512090082
LOG2 = math.log(2.0)
LOGLOG2 = math.log(LOG2)

# |x| at which Ei switches from the power series to the continued fraction
EI_SWITCH = 6.0

_ZETA_N = 20
_ZETA_TERMS = 12


# -- Lambert W ---------------------------------------------------------------

def lambert_w(x: float) -> float:
    """Principal branch of W on ``[0, inf)`` by Halley iteration.

    Initial guess: ``log1p(x)`` below e, otherwise the two-term asymptotic
    ``L1 - L2 + L2/L1`` with ``L1 = log x``, ``L2 = log L1``.
    """
    x = float(x)
    if not x >= 0.0:
        raise OutOfDomain(f"lambert_w is implemented for x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    if x < math.e:
        w = math.log1p(x)
    else:
        l1 = math.log(x)
        l2 = math.log(l1)
        w = l1 - l2 + l2 / l1
    for _ in range(64):
        # t = (w e^w - x) e^{-w}; keeps the iteration free of overflow
        t = w - x * math.exp(-w)
        step = t / ((w + 1.0) - (w + 2.0) * t / (2.0 * w + 2.0))
        w -= step
        if abs(step) <= 4e-16 * abs(w):
            break
    return w


# -- exponential integrals ---------------------------------------------------

def _e1_series(t: float) -> float:
    # E1(t) = -gamma - log t + sum_{k>=1} (-1)^{k+1} t^k / (k k!)
    terms = []
    term = 1.0
    k = 1
    while True:
        term *= -t / k
        contrib = -term / k
        terms.append(contrib)
        if abs(contrib) < 1e-18 and k > t:
            break
        k += 1
    return -EULER_GAMMA - math.log(t) + math.fsum(terms)


def _e1_scaled_cf(t: float) -> float:
    """``exp(t) * E1(t)`` by modified Lentz on the even continued fraction."""
    tiny = 1e-300
    b = t + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h


def e1_scaled(t: float) -> float:
    """``exp(t) * E1(t)`` for t > 0, finite for arbitrarily large t."""
    if not t > 0.0:
        raise OutOfDomain(f"E1 needs t > 0, got {t}")
    # the series loses relative accuracy once multiplied by e^t, so the
    # scaled form switches earlier than Ei itself
    if t <= 2.0:
        return math.exp(t) * _e1_series(t)
    return _e1_scaled_cf(t)


def gamma0(t: float) -> float:
    """Upper incomplete gamma Gamma(0, t) = E1(t) = -Ei(-t), t > 0."""
    t = float(t)
    if not t > 0.0:
        raise OutOfDomain(f"gamma0 needs t > 0, got {t}")
    if t <= EI_SWITCH:
        return _e1_series(t)
    if t > 745.0:
        return 0.0
    return math.exp(-t) * _e1_scaled_cf(t)


def expint_ei(x: float) -> float:
    """Ei(x) for x < 0 (series for |x| <= 6, continued fraction beyond)."""
    x = float(x)
    if not x < 0.0:
        raise OutOfDomain(f"expint_ei is implemented for x < 0 only, got {x}")
    return -gamma0(-x)


# -- Riemann zeta on (1, inf) --------------------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple[float, ...]:
    """B_2, B_4, ..., B_{2 count} divided by the matching factorial."""
    m = 2 * count
    b = [Fraction(0)] * (m + 1)
    b[0] = Fraction(1)
    for n in range(1, m + 1):
        b[n] = -sum(math.comb(n + 1, j) * b[j] for j in range(n)) / (n + 1)
    return tuple(float(b[2 * j] / math.factorial(2 * j)) for j in range(1, count + 1))


def _zeta_parts(s: float) -> tuple[float, float]:
    if not s > 1.0:
        raise OutOfDomain(f"zeta is implemented for s > 1, got {s}")
    n_cut = _ZETA_N
    log_n = math.log(n_cut)
    head = [k ** -s for k in range(1, n_cut)]
    dhead = [-math.log(k) * k ** -s for k in range(2, n_cut)]
    ns = n_cut ** -s
    tail = [n_cut * ns / (s - 1.0), 0.5 * ns]
    dtail = [-n_cut * ns * (log_n / (s - 1.0) + 1.0 / (s - 1.0) ** 2), -0.5 * log_n * ns]
    poly = 1.0   # rising factorial s (s+1) ... (s+2j-2)
    dlog = 0.0   # its logarithmic derivative
    for j, coef in enumerate(_bernoulli_even(_ZETA_TERMS), start=1):
        if j == 1:
            poly, dlog = s, 1.0 / s
        else:
            for i in (2 * j - 3, 2 * j - 2):
                poly *= s + i
                dlog += 1.0 / (s + i)
        power = n_cut ** (-s - 2 * j + 1)
        tail.append(coef * poly * power)
        dtail.append(coef * poly * power * (dlog - log_n))
    return math.fsum(head + tail), math.fsum(dhead + dtail)


def zeta(s: float) -> float:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    return _zeta_parts(float(s))[0]


def zeta_prime(s: float) -> float:
    """Derivative of zeta for real s > 1, from the differentiated Euler-Maclaurin sum."""
    return _zeta_parts(float(s))[1]


def solve_rho() -> float:
    """The unique s > 1 with zeta(s) = 2."""
    rho = brentq(lambda s: zeta(s) - 2.0, 1.5, 2.0, xtol=1e-15, rtol=4 * np.finfo(float).eps)
    # one Newton step cleans up the last ulp or two of the bracket
    return rho - (zeta(rho) - 2.0) / zeta_prime(rho)


# -- S(t) and the inverse of t e^t Gamma(0, t) ----------------------------------------------

def S_func(t: float) -> float:
    """``(t / pi) * sin(pi / t)`` for t > 0."""
    if not t > 0:
        raise OutOfDomain(f"S needs t > 0, got {t}")
    return t / math.pi * math.sin(math.pi / t)


def _phi(t: float) -> float:
    # t e^t Gamma(0, t): increases from 0 to 1 on (0, inf)
    return t * e1_scaled(t)


def H_func(c: float) -> float:
    """Inverse of ``t -> t * exp(t) * Gamma(0, t)``, defined for c in (0, 1).

    Bracketed solve in log t, then Newton polish using
    ``phi'(t) = phi(t) / t + phi(t) - 1``.
    """
    c = float(c)
    if not 0.0 < c < 1.0:
        raise OutOfDomain(f"H is defined on (0, 1), got {c}")
    u = brentq(lambda u: _phi(math.exp(u)) - c, -700.0, 36.0, xtol=1e-14, maxiter=500)
    t = math.exp(u)
    for _ in range(3):
        ph = _phi(t)
        slope = ph / t + ph - 1.0
        if slope <= 0.0:
            break
        t_new = t - (ph - c) / slope
        if not t_new > 0.0:
            break
        t = t_new
    return t


# -- constants -----------------------------------------------------------------

@dataclass(frozen=True)
class Constant:
    name: str
    value: float
    residual: float
    paper_value: float | None = None


@dataclass(frozen=True)
class ConstantsReport:
    gamma: Constant
    rho: Constant
    kalmar_K: Constant
    c_F: Constant
    w: Constant
    c_G: Constant
    c_star: Constant

    def entries(self) -> list[Constant]:
        return [self.gamma, self.rho, self.kalmar_K, self.c_F, self.w, self.c_G, self.c_star]

    def as_json(self) -> dict:
        return {"constants": [asdict(c) for c in self.entries()]}


def euler_gamma_check(n: int = 10**6) -> float:
    """``H_n - log n`` minus its Euler-Maclaurin tail; should reproduce gamma."""
    k = np.arange(1, n + 1, dtype=np.float64)
    harmonic = math.fsum((1.0 / k).tolist())
    tail = 1.0 / (2 * n) - 1.0 / (12 * n**2) + 1.0 / (120 * n**4)
    return harmonic - math.log(n) - tail


def w_constant() -> float:
    """w = W(1 / (e log 2))."""
    return lambert_w(1.0 / (math.e * LOG2))


def c_G_theorem(w: float) -> float:
    """The constant for the sum of G(n), in the form that carries ``w + log w + log log 2``."""
    return w * (1.0 + math.exp(w) * expint_ei(-w) * (w + math.log(w) + LOGLOG2))


def c_G_reduced(w: float) -> float:
    """Same constant after using ``w + log w + log log 2 = -1``."""
    return w * (1.0 - math.exp(w) * expint_ei(-w))


@cache
def constants_report() -> ConstantsReport:
    gamma_em = euler_gamma_check()
    rho = solve_rho()
    zp = zeta_prime(rho)
    kalmar = -1.0 / (rho * zp)
    c_f = 2.0 * math.sqrt(2.0) * math.exp(-EULER_GAMMA / 2.0)
    w = w_constant()
    c_g = c_G_theorem(w)
    c_star = -w * math.exp(w) * expint_ei(-w)
    return ConstantsReport(
        gamma=Constant("gamma", EULER_GAMMA, abs(gamma_em - EULER_GAMMA)),
        rho=Constant("rho", rho, abs(zeta(rho) - 2.0), 1.73),
        kalmar_K=Constant("kalmar_K", kalmar, abs(kalmar * rho * zp + 1.0)),
        c_F=Constant("c_F", c_f, abs(c_f**2 * math.exp(EULER_GAMMA) / 8.0 - 1.0), 2.12),
        w=Constant("w", w, abs(w * math.exp(w) - 1.0 / (math.e * LOG2))),
        c_G=Constant("c_G", c_g, abs(c_g - c_G_reduced(w)), 0.771),
        c_star=Constant("c_star", c_star, abs(H_func(c_star) - w)),
    )
